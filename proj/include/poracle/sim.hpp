#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "poracle/dense_operator.hpp"

namespace poracle {

class Circuit;

enum class Precision { Double, Single };

enum class GateKind { X, H, S, Sdg, Z, Swap };

/// One (possibly multi-controlled) gate. Controls fire on the all-ones pattern.
struct GateApplication {
    GateKind kind = GateKind::X;
    std::vector<unsigned> targets;
    std::vector<unsigned> controls;

    bool operator==(const GateApplication&) const = default;
};

const char* gate_name(GateKind kind);

/// Checks arity, range and target/control disjointness. Throws ValidationError.
void validate_gate(const GateApplication& gate, unsigned num_qubits);

/// Default ceiling for a single statevector allocation (16 GiB).
inline constexpr std::uint64_t default_memory_budget = std::uint64_t{16} << 30;

/// Dense amplitude vector over `num_qubits` qubits. Qubit 0 is the least
/// significant bit of the basis index.
class Statevector {
public:
    /// |0...0>. Throws ValidationError outside 1..30 qubits and CapacityError
    /// when 2^n amplitudes exceed `memory_budget` bytes.
    explicit Statevector(unsigned num_qubits, Precision precision = Precision::Double,
                         std::uint64_t memory_budget = default_memory_budget);

    unsigned num_qubits() const noexcept { return num_qubits_; }
    Precision precision() const noexcept;
    std::size_t size() const noexcept { return std::size_t{1} << num_qubits_; }

    std::complex<double> amplitude(std::size_t index) const;
    void set_amplitude(std::size_t index, std::complex<double> value);
    /// Resets to the computational basis state |index>.
    void set_basis(std::size_t index);
    /// Overwrites all amplitudes. `values.size()` must equal size().
    void assign(std::span<const std::complex<double>> values);
    std::vector<std::complex<double>> amplitudes() const;

    double norm_squared() const;
    double probability(std::size_t index) const;

    /// Calls fn(index, |amplitude|^2) for every basis index in order.
    template <typename Fn>
    void for_each_probability(Fn&& fn) const {
        std::visit(
            [&fn](const auto& v) {
                for (std::size_t i = 0; i < v.size(); ++i) fn(i, static_cast<double>(std::norm(v[i])));
            },
            amps_);
    }

    void apply(const GateApplication& gate);
    void apply(const Circuit& circuit);

    static std::uint64_t bytes_required(unsigned num_qubits, Precision precision);

private:
    unsigned num_qubits_;
    std::variant<std::vector<std::complex<double>>, std::vector<std::complex<float>>> amps_;
};

inline Statevector new_state(unsigned num_qubits, Precision precision = Precision::Double,
                             std::uint64_t memory_budget = default_memory_budget) {
    return Statevector(num_qubits, precision, memory_budget);
}

inline void apply(Statevector& state, const GateApplication& gate) { state.apply(gate); }
void apply_circuit(Statevector& state, const Circuit& circuit);

/// Named group of qubits whose value (little-endian within the group) is read out.
struct QubitGroup {
    std::string name;
    std::vector<unsigned> qubits;
};

/// Marginal distribution keyed by one value per group, in group order.
using Distribution = std::map<std::vector<std::uint64_t>, double>;

inline constexpr double distribution_cutoff = 1e-12;

/// Traces out every qubit not named in `groups`. Entries below 1e-12 are dropped.
Distribution register_distribution(const Statevector& state, std::span<const QubitGroup> groups);

/// Unitary of `circuit` built column by column from basis states (n <= 12).
DenseOperator dense_unitary(const Circuit& circuit);

} // namespace poracle
