#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "poracle/circuit.hpp"
#include "poracle/gf2.hpp"

namespace poracle {

/// A w-qubit word inside a larger circuit; qubits[j] holds bit j.
struct WordRegisterRef {
    std::string name;
    std::vector<unsigned> qubits;

    unsigned width() const { return static_cast<unsigned>(qubits.size()); }
};

// ---------------------------------------------------------------------------
// Direct-space builders. Each returns a finalized circuit over `num_qubits`
// wires that only touches the wires it is given.
// ---------------------------------------------------------------------------

/// Per bit: b ^= a; c ^= a; a ^= b & c. Leaves (Maj, a^b, a^c) on (a, b, c).
Circuit maj_gate(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b, const WordRegisterRef& c);

/// Per bit: b ^= c; c ^= a & b. Leaves (a, b^c, Ch) on (a, b, c).
Circuit ch_gate(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b, const WordRegisterRef& c);

/// b ^= a; b ^= carry.
Circuit sum_gate(unsigned num_qubits, unsigned carry, unsigned a, unsigned b);

/// Majority wiring with the carry on the a-wire: carry becomes Maj(carry, x1, x2).
Circuit carry_gate(unsigned num_qubits, unsigned carry, unsigned x1, unsigned x2);

/// x2 := (x1 + x2) mod 2^w via carry/sum ripple; carry must start and ends in |0>.
Circuit adder_gate(unsigned num_qubits, const WordRegisterRef& x1, const WordRegisterRef& x2, unsigned carry);

/// x := (x + c) mod 2^w by loading c into `scratch` with X gates around adder_gate.
Circuit const_adder_gate(unsigned num_qubits, const WordRegisterRef& x, std::uint64_t c,
                         const WordRegisterRef& scratch, unsigned carry);

/// x := L x for an invertible GF(2) map: fan L x into scratch, clear x with
/// L^{-1}, then swap x and scratch. Scratch starts and ends in |0>.
Circuit linear_map_gate(unsigned num_qubits, const GF2Matrix& forward, const GF2Matrix& backward,
                        const WordRegisterRef& x, const WordRegisterRef& scratch);

/// x := sigma_mu(x). Throws SingularError for non-invertible mu.
Circuit shifter_inline_gate(unsigned num_qubits, const ShiftType& mu, const WordRegisterRef& x,
                            const WordRegisterRef& scratch);

/// Reversible circuit for an arbitrary permutation of `wires` (bit j of the
/// table value lives on wires[j]), by transformation-based synthesis with
/// positive-control multi-controlled X gates.
Circuit permutation_gate(unsigned num_qubits, std::span<const std::uint64_t> table, std::span<const unsigned> wires);

// ---------------------------------------------------------------------------
// Reciprocal-space builders. On their data wires they act as
// H^n . U_direct . H^n up to a global phase, given the stated ancilla states.
// ---------------------------------------------------------------------------

/// Reciprocal majority; `minus_anc` must hold |->. Outputs kappa_0..2 on ka, kb, kc.
Circuit recip_maj_gate(unsigned num_qubits, unsigned ka, unsigned kb, unsigned kc, unsigned minus_anc);

/// Reciprocal choose; `minus_anc` must hold |->.
Circuit recip_ch_gate(unsigned num_qubits, unsigned ka, unsigned kb, unsigned kc, unsigned minus_anc);

/// ka ^= kb; kc ^= kb. Outputs (kappa_0, kappa_1, kappa_2) on (kc, ka, kb).
Circuit recip_sum_gate(unsigned num_qubits, unsigned kc, unsigned ka, unsigned kb);

/// Reciprocal majority with the reciprocal carry on the ka/kappa_0 wire.
Circuit recip_carry_gate(unsigned num_qubits, unsigned carry, unsigned k1, unsigned k2, unsigned minus_anc);

/// Word-wide reciprocal majority / choose (one gate per bit, shared |-> ancilla).
Circuit recip_maj_word(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b,
                       const WordRegisterRef& c, unsigned minus_anc);
Circuit recip_ch_word(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b,
                      const WordRegisterRef& c, unsigned minus_anc);

/// Reciprocal ripple adder; carry must hold |+> and minus_anc |->.
Circuit recip_adder_gate(unsigned num_qubits, const WordRegisterRef& k1, const WordRegisterRef& k2, unsigned carry,
                         unsigned minus_anc);

/// kappa = sigma_{~mu}^{-1}(k) in place, using scratch in |0>. Throws SingularError.
Circuit recip_shifter_gate(unsigned num_qubits, const ShiftType& mu, const WordRegisterRef& k,
                           const WordRegisterRef& scratch);

/// H on k and carry, const_adder_gate, H again. `carry` holds |+> (the
/// reciprocal carry) and is returned to |+>; scratch stays |0>.
Circuit recip_const_adder_gate(unsigned num_qubits, const WordRegisterRef& k, std::uint64_t c,
                               const WordRegisterRef& scratch, unsigned carry);

/// H on `wires`, `body`, H on `wires`: the reciprocal of any direct circuit
/// whose ancillas are untouched by the transform.
Circuit hadamard_conjugate(const Circuit& body, std::span<const unsigned> wires);

/// Inverse GF(2) matrices used by the shifters. Throws SingularError.
GF2Matrix require_inverse(const GF2Matrix& m, const std::string& what);

} // namespace poracle
