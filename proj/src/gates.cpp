#include "poracle/gates.hpp"

#include <bit>

#include "poracle/errors.hpp"

namespace poracle {

namespace {

void require_same_width(const WordRegisterRef& a, const WordRegisterRef& b) {
    if (a.width() != b.width())
        throw ValidationError("register width mismatch: '" + a.name + "' has " + std::to_string(a.width()) + ", '" +
                              b.name + "' has " + std::to_string(b.width()));
}

void require_constant_fits(std::uint64_t c, unsigned width) {
    if (c > word_mask(width))
        throw ValidationError("constant " + std::to_string(c) + " does not fit in " + std::to_string(width) + " bits");
}

} // namespace

GF2Matrix require_inverse(const GF2Matrix& m, const std::string& what) {
    auto inv = invert(m);
    if (!inv) throw SingularError(what + " is not invertible over GF(2)");
    return *inv;
}

Circuit maj_gate(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b, const WordRegisterRef& c) {
    require_same_width(a, b);
    require_same_width(a, c);
    Circuit out(num_qubits);
    for (unsigned j = 0; j < a.width(); ++j) {
        out.x(b.qubits[j], {a.qubits[j]});
        out.x(c.qubits[j], {a.qubits[j]});
        out.x(a.qubits[j], {b.qubits[j], c.qubits[j]});
    }
    return out.finalize();
}

Circuit ch_gate(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b, const WordRegisterRef& c) {
    require_same_width(a, b);
    require_same_width(a, c);
    Circuit out(num_qubits);
    for (unsigned j = 0; j < a.width(); ++j) {
        out.x(b.qubits[j], {c.qubits[j]});
        out.x(c.qubits[j], {a.qubits[j], b.qubits[j]});
    }
    return out.finalize();
}

Circuit sum_gate(unsigned num_qubits, unsigned carry, unsigned a, unsigned b) {
    Circuit out(num_qubits);
    out.x(b, {a});
    out.x(b, {carry});
    return out.finalize();
}

Circuit carry_gate(unsigned num_qubits, unsigned carry, unsigned x1, unsigned x2) {
    return maj_gate(num_qubits, {"carry", {carry}}, {"x1", {x1}}, {"x2", {x2}});
}

Circuit adder_gate(unsigned num_qubits, const WordRegisterRef& x1, const WordRegisterRef& x2, unsigned carry) {
    require_same_width(x1, x2);
    const unsigned w = x1.width();
    Circuit out(num_qubits);
    if (w == 0) return out.finalize();
    for (unsigned j = 0; j + 1 < w; ++j) out.append(carry_gate(num_qubits, carry, x1.qubits[j], x2.qubits[j]));
    out.append(sum_gate(num_qubits, carry, x1.qubits[w - 1], x2.qubits[w - 1]));
    for (unsigned j = w - 1; j-- > 0;) {
        out.append(adjoint(carry_gate(num_qubits, carry, x1.qubits[j], x2.qubits[j])));
        out.append(sum_gate(num_qubits, carry, x1.qubits[j], x2.qubits[j]));
    }
    return out.finalize();
}

Circuit const_adder_gate(unsigned num_qubits, const WordRegisterRef& x, std::uint64_t c,
                         const WordRegisterRef& scratch, unsigned carry) {
    require_same_width(x, scratch);
    require_constant_fits(c, x.width());
    Circuit encode(num_qubits);
    for (unsigned j = 0; j < x.width(); ++j)
        if ((c >> j) & 1U) encode.x(scratch.qubits[j]);
    Circuit out(num_qubits);
    out.append(encode).append(adder_gate(num_qubits, scratch, x, carry)).append(encode);
    return out.finalize();
}

Circuit linear_map_gate(unsigned num_qubits, const GF2Matrix& forward, const GF2Matrix& backward,
                        const WordRegisterRef& x, const WordRegisterRef& scratch) {
    require_same_width(x, scratch);
    const unsigned w = x.width();
    if (forward.width() != w || backward.width() != w)
        throw ValidationError("linear map width does not match register '" + x.name + "'");
    Circuit out(num_qubits);
    for (unsigned j = 0; j < w; ++j)
        for (unsigned i = 0; i < w; ++i)
            if (forward.bit(i, j)) out.x(scratch.qubits[i], {x.qubits[j]});
    out.barrier();
    for (unsigned j = 0; j < w; ++j)
        for (unsigned i = 0; i < w; ++i)
            if (backward.bit(i, j)) out.x(x.qubits[i], {scratch.qubits[j]});
    out.barrier();
    for (unsigned j = 0; j < w; ++j) out.swap(x.qubits[j], scratch.qubits[j]);
    return out.finalize();
}

Circuit shifter_inline_gate(unsigned num_qubits, const ShiftType& mu, const WordRegisterRef& x,
                            const WordRegisterRef& scratch) {
    if (mu.width != x.width()) throw ValidationError("shift width does not match register '" + x.name + "'");
    const GF2Matrix forward = matrix_of(mu);
    return linear_map_gate(num_qubits, forward, require_inverse(forward, "shift " + mu.to_string()), x, scratch);
}

Circuit permutation_gate(unsigned num_qubits, std::span<const std::uint64_t> table, std::span<const unsigned> wires) {
    const unsigned n = static_cast<unsigned>(wires.size());
    if (table.size() != (std::size_t{1} << n)) throw ValidationError("permutation table size must be 2^wires");
    std::vector<std::uint64_t> f(table.begin(), table.end());
    {
        std::vector<bool> hit(f.size(), false);
        for (auto v : f) {
            if (v >= f.size() || hit[v]) throw ValidationError("table is not a permutation");
            hit[v] = true;
        }
    }

    // Output-side transformation synthesis: gates g_1..g_k with g_k...g_1 f = id,
    // so f = g_1 ... g_k and the circuit applies them in reverse.
    std::vector<std::pair<unsigned, std::uint64_t>> gates; // (target bit, control mask)
    auto apply_to_outputs = [&f](unsigned target, std::uint64_t controls) {
        for (auto& v : f)
            if ((v & controls) == controls) v ^= std::uint64_t{1} << target;
    };
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        if (f[i] == i) continue;
        const std::uint64_t y = f[i];
        const std::uint64_t to_set = i & ~y;
        for (unsigned b = 0; b < n; ++b)
            if ((to_set >> b) & 1U) {
                gates.emplace_back(b, f[i]);
                apply_to_outputs(b, f[i]);
            }
        const std::uint64_t to_clear = f[i] & ~i;
        for (unsigned b = 0; b < n; ++b)
            if ((to_clear >> b) & 1U) {
                gates.emplace_back(b, i);
                apply_to_outputs(b, i);
            }
    }

    Circuit out(num_qubits);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        std::vector<unsigned> controls;
        for (unsigned b = 0; b < n; ++b)
            if ((it->second >> b) & 1U) controls.push_back(wires[b]);
        out.x(wires[it->first], std::move(controls));
    }
    return out.finalize();
}

Circuit recip_maj_gate(unsigned num_qubits, unsigned ka, unsigned kb, unsigned kc, unsigned minus_anc) {
    Circuit out(num_qubits);
    out.x(ka, {kb});
    out.x(ka, {kc});
    out.x(minus_anc, {ka, kb, kc});
    out.h(kb, {ka});
    out.h(kc, {ka});
    out.x(minus_anc, {ka, kb, kc});
    out.swap(kb, kc, {ka});
    return out.finalize();
}

Circuit recip_ch_gate(unsigned num_qubits, unsigned ka, unsigned kb, unsigned kc, unsigned minus_anc) {
    Circuit out(num_qubits);
    out.x(kc, {kb});
    out.x(minus_anc, {ka, kb, kc});
    out.h(ka, {kc});
    out.h(kb, {kc});
    out.x(minus_anc, {ka, kb, kc});
    out.swap(ka, kb, {kc});
    return out.finalize();
}

Circuit recip_sum_gate(unsigned num_qubits, unsigned kc, unsigned ka, unsigned kb) {
    Circuit out(num_qubits);
    out.x(ka, {kb});
    out.x(kc, {kb});
    return out.finalize();
}

Circuit recip_carry_gate(unsigned num_qubits, unsigned carry, unsigned k1, unsigned k2, unsigned minus_anc) {
    return recip_maj_gate(num_qubits, carry, k1, k2, minus_anc);
}

Circuit recip_maj_word(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b,
                       const WordRegisterRef& c, unsigned minus_anc) {
    require_same_width(a, b);
    require_same_width(a, c);
    Circuit out(num_qubits);
    for (unsigned j = 0; j < a.width(); ++j)
        out.append(recip_maj_gate(num_qubits, a.qubits[j], b.qubits[j], c.qubits[j], minus_anc));
    return out.finalize();
}

Circuit recip_ch_word(unsigned num_qubits, const WordRegisterRef& a, const WordRegisterRef& b,
                      const WordRegisterRef& c, unsigned minus_anc) {
    require_same_width(a, b);
    require_same_width(a, c);
    Circuit out(num_qubits);
    for (unsigned j = 0; j < a.width(); ++j)
        out.append(recip_ch_gate(num_qubits, a.qubits[j], b.qubits[j], c.qubits[j], minus_anc));
    return out.finalize();
}

Circuit recip_adder_gate(unsigned num_qubits, const WordRegisterRef& k1, const WordRegisterRef& k2, unsigned carry,
                         unsigned minus_anc) {
    require_same_width(k1, k2);
    const unsigned w = k1.width();
    Circuit out(num_qubits);
    if (w == 0) return out.finalize();
    for (unsigned j = 0; j + 1 < w; ++j)
        out.append(recip_carry_gate(num_qubits, carry, k1.qubits[j], k2.qubits[j], minus_anc));
    out.append(recip_sum_gate(num_qubits, carry, k1.qubits[w - 1], k2.qubits[w - 1]));
    for (unsigned j = w - 1; j-- > 0;) {
        out.append(adjoint(recip_carry_gate(num_qubits, carry, k1.qubits[j], k2.qubits[j], minus_anc)));
        out.append(recip_sum_gate(num_qubits, carry, k1.qubits[j], k2.qubits[j]));
    }
    return out.finalize();
}

Circuit recip_shifter_gate(unsigned num_qubits, const ShiftType& mu, const WordRegisterRef& k,
                           const WordRegisterRef& scratch) {
    if (mu.width != k.width()) throw ValidationError("shift width does not match register '" + k.name + "'");
    // Singular mu has a singular complement too (its matrix is the transpose).
    require_inverse(matrix_of(mu), "shift " + mu.to_string());
    const GF2Matrix complement_matrix = matrix_of(complement(mu));
    const GF2Matrix table = require_inverse(complement_matrix, "shift " + complement(mu).to_string());
    return linear_map_gate(num_qubits, table, complement_matrix, k, scratch);
}

Circuit recip_const_adder_gate(unsigned num_qubits, const WordRegisterRef& k, std::uint64_t c,
                               const WordRegisterRef& scratch, unsigned carry) {
    std::vector<unsigned> wires = k.qubits;
    wires.push_back(carry);
    return hadamard_conjugate(const_adder_gate(num_qubits, k, c, scratch, carry), wires);
}

Circuit hadamard_conjugate(const Circuit& body, std::span<const unsigned> wires) {
    const Circuit h = layer(body.num_qubits(), GateKind::H, wires);
    Circuit out(body.num_qubits());
    out.append(h).append(body).append(h);
    return out.finalize();
}

} // namespace poracle
