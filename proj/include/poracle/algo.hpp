#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "poracle/circuit.hpp"
#include "poracle/dense_operator.hpp"
#include "poracle/sim.hpp"

namespace poracle {

/// Hadamard dot product: parity of the bitwise AND. The phase
/// exp(i 2 pi k.x) equals (-1)^parity_dot(k, x).
inline unsigned parity_dot(std::uint64_t u, std::uint64_t v) {
    return static_cast<unsigned>(std::popcount(u & v) & 1);
}

/// Explicit function table on n-bit words.
struct BijectionTable {
    unsigned n = 0;
    std::vector<std::uint64_t> table;

    static BijectionTable identity(unsigned n);
    static BijectionTable random(unsigned n, std::mt19937_64& rng);
    /// Tabulates `fn` over all 2^n inputs.
    template <typename Fn>
    static BijectionTable from_function(unsigned n, Fn&& fn) {
        BijectionTable out{n, std::vector<std::uint64_t>(std::size_t{1} << n)};
        for (std::uint64_t x = 0; x < out.table.size(); ++x) out.table[x] = fn(x);
        return out;
    }

    std::size_t size() const noexcept { return table.size(); }
    std::uint64_t operator()(std::uint64_t x) const { return table.at(x); }

    /// Requires a bijection; throws ValidationError otherwise.
    BijectionTable inverse() const;
    /// P|x> = |f(x)>.
    DenseOperator permutation_matrix() const;
};

/// (f o g)(x) = f(g(x)).
BijectionTable compose(const BijectionTable& f, const BijectionTable& g);

bool check_bijective(const BijectionTable& f);
/// Every output bit is 0 on exactly half of the inputs.
bool check_bit_balance(const BijectionTable& f);

/// Completed oracles of the 3-bit library gates, bits (a, b, c) = (x0, x1, x2).
BijectionTable maj_completion();
BijectionTable ch_completion();
/// (c, a, b) -> (c, a, a^b^c) with c = bit 0, a = bit 1, b = bit 2.
BijectionTable sum_completion();

/// R[f](kappa, k) = 2^-n sum_x (-1)^{kappa.f(x) + x.k}. Throws SizeError above 12 bits.
DenseOperator dense_recip_transform(const BijectionTable& f);
/// B[f](kappa, x) = 2^{-n/2} (-1)^{kappa.f(x)}.
DenseOperator dense_bare_transform(const BijectionTable& f);

/// Largest entry of |R[f o g] - R[f] R[g]|.
double verify_chain_rule(const BijectionTable& f, const BijectionTable& g);

enum class MatchConvention { AllZeros, AllOnes };

/// Direct and reciprocal circuits for one oracle plus the wires that carry
/// each logical output bit. Ancillas enter and leave both circuits in |0>
/// unless a circuit prepares them itself.
struct PartialOracle {
    Circuit direct;
    Circuit reciprocal;
    std::vector<unsigned> index_qubits;
    /// f_j lives on f_wires[j] after `direct`.
    std::vector<unsigned> f_wires;
    /// kappa_j lives on kappa_wires[j] after `reciprocal`.
    std::vector<unsigned> kappa_wires;
};

/// Oracle for an arbitrary n-bit bijection on qubits 0..n-1 (synthesized
/// direct circuit, reciprocal by Hadamard conjugation).
PartialOracle oracle_from_table(const BijectionTable& f);

/// The circuit of one parallelized iteration (no initial H layer).
Circuit parallel_iteration_circuit(const PartialOracle& oracle, MatchConvention convention);
/// One sequential step for output bit `ell`.
Circuit sequential_iteration_circuit(const PartialOracle& oracle, unsigned ell);

/// Applies the parallelized iteration in place. From the uniform superposition
/// this leaves e^{i pi n/4}|f^{-1}(0...0)> (AllZeros) or |f^{-1}(1...1)> (AllOnes).
void run_parallel_iteration(Statevector& state, const PartialOracle& oracle,
                            MatchConvention convention = MatchConvention::AllZeros);

/// One sequential iteration on bit `ell`: maps |T_ell> to e^{i pi/4}|T_{ell+1}>.
void run_sequential_iteration(Statevector& state, unsigned ell, const PartialOracle& oracle);

/// Initial preparation of an ancilla wire for data-wire extraction.
enum class WireState { Zero, Plus, Minus };

struct AncillaWire {
    unsigned qubit;
    WireState in = WireState::Zero;
    WireState out = WireState::Zero;
};

struct DataWireUnitary {
    DenseOperator unitary;
    /// Largest probability lost out of the expected ancilla output states.
    double leakage = 0.0;
};

/// Restricts `circuit` to `data_wires` (bit j of the operator index on
/// data_wires[j]) with ancillas prepared and projected as given. Every other
/// wire starts in |0> and is projected onto |0>.
DataWireUnitary data_wire_unitary(const Circuit& circuit, std::span<const unsigned> data_wires,
                                  std::span<const AncillaWire> ancillas = {});

} // namespace poracle
