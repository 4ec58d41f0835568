#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "poracle/algo.hpp"
#include "poracle/circuit.hpp"
#include "poracle/gates.hpp"
#include "poracle/gf2.hpp"
#include "poracle/sim.hpp"

namespace poracle {

/// Position of a register in its tape's declaration order.
struct RegId {
    std::size_t value = 0;
    auto operator<=>(const RegId&) const = default;
};

struct FrameRegister {
    std::string name;
    unsigned width = 1;
};

struct MajTemp {
    RegId a, b, c;
};
struct ChTemp {
    RegId a, b, c;
};
struct ShiftTemp {
    ShiftType mu;
    RegId x;
};
/// Value computed in place on its argument registers and uncomputed after use.
using TempExpr = std::variant<MajTemp, ChTemp, ShiftTemp>;

/// dst += src
struct AddReg {
    RegId dst, src;
};
/// dst += constant
struct AddConst {
    RegId dst;
    std::uint64_t value = 0;
};
/// dst += temp(args); args are left unchanged
struct AddTemp {
    RegId dst;
    TempExpr expr;
};
/// reg := sigma_mu(reg)
struct ShiftInline {
    ShiftType mu;
    RegId reg;
};

using Instruction = std::variant<AddReg, AddConst, AddTemp, ShiftInline>;

/// Straight-line oracle program. Append-only until sealed.
class ProgramTape {
public:
    RegId add_register(std::string name, unsigned width);

    void add(RegId dst, RegId src);
    void add_const(RegId dst, std::uint64_t value);
    void add_maj(RegId dst, RegId a, RegId b, RegId c);
    void add_ch(RegId dst, RegId a, RegId b, RegId c);
    void add_shift(RegId dst, const ShiftType& mu, RegId x);
    void shift_inline(const ShiftType& mu, RegId reg);
    /// Validates and appends. Throws ValidationError / SingularError.
    void push(Instruction instruction);

    ProgramTape& seal();
    bool sealed() const noexcept { return sealed_; }

    const std::vector<FrameRegister>& registers() const noexcept { return registers_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
    const FrameRegister& reg(RegId id) const { return registers_.at(id.value); }
    std::optional<RegId> find(std::string_view name) const;
    RegisterShape shape() const;

    bool uses_addition() const;
    bool uses_scratch() const;

private:
    void require_open() const;
    void require_reg(RegId id) const;

    std::vector<FrameRegister> registers_;
    std::vector<Instruction> instructions_;
    bool sealed_ = false;
};

/// One value per register, in declaration order.
using RegisterValues = std::vector<std::uint64_t>;

/// Classical interpretation with modulo-2^w arithmetic.
RegisterValues calculate(const ProgramTape& tape, std::span<const std::uint64_t> seeds);
std::map<std::string, std::uint64_t> calculate(const ProgramTape& tape,
                                               const std::map<std::string, std::uint64_t>& seeds);

/// Evaluates a temporary on the given register values.
std::uint64_t evaluate_temp(const ProgramTape& tape, const TempExpr& expr, std::span<const std::uint64_t> values);

/// Physical placement: index registers first (declaration order, little
/// endian), then carry, the shared |-> ancilla and the scratch word.
struct FrameLayout {
    unsigned num_qubits = 0;
    std::vector<WordRegisterRef> registers;
    std::vector<unsigned> index_qubits;
    std::optional<unsigned> carry;
    std::optional<unsigned> minus_anc;
    std::optional<WordRegisterRef> scratch;

    RegisterLayout circuit_layout() const;
    std::vector<QubitGroup> register_groups() const;
};

FrameLayout allocate_layout(const ProgramTape& tape);

struct EmittedCircuit {
    Circuit circuit;
    /// Physical wire of logical output bit j (flat index order).
    std::vector<unsigned> output_wires;
};

/// U_f for f = g XOR target. `targets` has one value per register.
EmittedCircuit emit_oracle_circuit(const ProgramTape& tape, const FrameLayout& layout,
                                   std::span<const std::uint64_t> targets);

/// R[g] as a circuit. Prepares the carry in |+> and the phase ancilla in |->
/// at the start; the adjoint undoes that. Passing `targets` appends the Z
/// layer that turns R[g] into R[g XOR target].
EmittedCircuit emit_recip_circuit(const ProgramTape& tape, const FrameLayout& layout,
                                  std::span<const std::uint64_t> targets = {});

PartialOracle build_partial_oracle(const ProgramTape& tape, const FrameLayout& layout,
                                   std::span<const std::uint64_t> targets, bool target_in_reciprocal = false);

enum class IterationMode { Parallel, Sequential };

struct IterationOptions {
    MatchConvention convention = MatchConvention::AllZeros;
    IterationMode mode = IterationMode::Parallel;
    Precision precision = Precision::Double;
    std::uint64_t memory_budget = default_memory_budget;
    bool target_in_reciprocal = false;
};

struct IterationResult {
    Statevector state;
    FrameLayout layout;
    Distribution distribution;
    std::map<std::string, std::size_t> gate_counts;
    unsigned iterations = 0;
};

/// Allocates registers and ancillas, applies H to the index qubits and runs
/// the search (one parallel iteration or one sequential pass per index bit).
IterationResult partial_oracle_iteration(const ProgramTape& tape, std::span<const std::uint64_t> targets,
                                         const IterationOptions& options = {});

/// The whole search as one circuit, including the initial H layer.
Circuit pipeline_circuit(const ProgramTape& tape, std::span<const std::uint64_t> targets,
                         const IterationOptions& options = {});

} // namespace poracle
