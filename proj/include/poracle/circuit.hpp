#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "poracle/sim.hpp"

namespace poracle {

/// Display-only separator; the simulator skips it.
struct Barrier {
    bool operator==(const Barrier&) const = default;
};

using Op = std::variant<GateApplication, Barrier>;

enum class RegisterRole { Index, Carry, PhaseAncilla, Scratch };

const char* role_name(RegisterRole role);
std::optional<RegisterRole> parse_role(std::string_view text);

struct RegisterEntry {
    std::string name;
    std::vector<unsigned> qubits;
    RegisterRole role = RegisterRole::Index;

    bool operator==(const RegisterEntry&) const = default;
};

/// Named, pairwise-disjoint qubit groups in declaration order.
class RegisterLayout {
public:
    /// Throws ValidationError on duplicate names or overlapping qubits.
    void add(std::string name, std::vector<unsigned> qubits, RegisterRole role);

    const std::vector<RegisterEntry>& entries() const noexcept { return entries_; }
    const RegisterEntry* find(std::string_view name) const;
    /// All qubits with the given role, in declaration order.
    std::vector<unsigned> qubits_with_role(RegisterRole role) const;
    bool empty() const noexcept { return entries_.empty(); }

    bool operator==(const RegisterLayout&) const = default;

private:
    std::vector<RegisterEntry> entries_;
};

/// Register widths (m_1, ..., m_r) of an index register.
struct RegisterShape {
    std::vector<unsigned> widths;

    unsigned total() const;
    /// Bit offset of register `r` within the flat index word.
    unsigned offset(std::size_t r) const;
    std::vector<std::uint64_t> split(std::uint64_t flat) const;
    std::uint64_t join(std::span<const std::uint64_t> values) const;
};

/// Ordered reversible gate list. Mutable while building; finalize() freezes it.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(unsigned num_qubits) : num_qubits_(num_qubits) {}

    unsigned num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Op>& ops() const noexcept { return ops_; }
    const RegisterLayout& layout() const noexcept { return layout_; }
    bool finalized() const noexcept { return finalized_; }

    Circuit& add(GateApplication gate);
    Circuit& add(GateKind kind, std::vector<unsigned> targets, std::vector<unsigned> controls = {});
    Circuit& x(unsigned target, std::vector<unsigned> controls = {});
    Circuit& h(unsigned target, std::vector<unsigned> controls = {});
    Circuit& s(unsigned target);
    Circuit& sdg(unsigned target);
    Circuit& z(unsigned target);
    Circuit& swap(unsigned a, unsigned b, std::vector<unsigned> controls = {});
    Circuit& barrier();
    /// Appends all ops of `other`, which must have the same qubit count.
    Circuit& append(const Circuit& other);
    Circuit& set_layout(RegisterLayout layout);
    Circuit& finalize();

    std::size_t gate_count() const;
    std::map<std::string, std::size_t> gate_counts() const;

    bool operator==(const Circuit& other) const;

private:
    void require_mutable() const;

    unsigned num_qubits_ = 0;
    std::vector<Op> ops_;
    RegisterLayout layout_;
    bool finalized_ = false;
};

GateApplication inverse(const GateApplication& gate);

/// Reversed op order with each gate inverted (S <-> Sdg). Layout kept.
Circuit adjoint(const Circuit& circuit);

/// body, inner, adjoint(body) as one circuit; unitary is body^dagger inner body.
Circuit conjugate(const Circuit& body, const Circuit& inner);

/// Applies `kind` to every listed qubit.
Circuit layer(unsigned num_qubits, GateKind kind, std::span<const unsigned> qubits);

/// Hands out fresh qubit indices and takes released ones back.
class QubitAllocator {
public:
    std::vector<unsigned> allocate(unsigned count);
    void release(std::span<const unsigned> qubits);
    unsigned high_water() const noexcept { return next_; }

private:
    unsigned next_ = 0;
    std::vector<unsigned> free_;
};

} // namespace poracle
