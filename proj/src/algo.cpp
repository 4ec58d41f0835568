#include "poracle/algo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "poracle/errors.hpp"
#include "poracle/gates.hpp"

namespace poracle {

namespace {

constexpr unsigned max_dense_bits = 12;

void require_dense_size(unsigned n) {
    if (n > max_dense_bits)
        throw SizeError("dense transforms limited to " + std::to_string(max_dense_bits) + " bits, got " +
                        std::to_string(n));
}

std::vector<unsigned> iota_wires(unsigned n) {
    std::vector<unsigned> w(n);
    std::iota(w.begin(), w.end(), 0U);
    return w;
}

} // namespace

BijectionTable BijectionTable::identity(unsigned n) {
    return from_function(n, [](std::uint64_t x) { return x; });
}

BijectionTable BijectionTable::random(unsigned n, std::mt19937_64& rng) {
    BijectionTable out = identity(n);
    std::shuffle(out.table.begin(), out.table.end(), rng);
    return out;
}

BijectionTable BijectionTable::inverse() const {
    if (!check_bijective(*this)) throw ValidationError("function table is not a bijection");
    BijectionTable out{n, std::vector<std::uint64_t>(table.size())};
    for (std::uint64_t x = 0; x < table.size(); ++x) out.table[table[x]] = x;
    return out;
}

DenseOperator BijectionTable::permutation_matrix() const {
    require_dense_size(n);
    DenseOperator p(table.size());
    for (std::uint64_t x = 0; x < table.size(); ++x) p(table.at(x), x) = 1.0;
    return p;
}

BijectionTable compose(const BijectionTable& f, const BijectionTable& g) {
    if (f.n != g.n) throw ValidationError("compose: bit counts differ");
    return BijectionTable::from_function(f.n, [&](std::uint64_t x) { return f(g(x)); });
}

bool check_bijective(const BijectionTable& f) {
    if (f.table.size() != (std::size_t{1} << f.n)) return false;
    std::vector<bool> hit(f.table.size(), false);
    for (auto v : f.table) {
        if (v >= hit.size() || hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

bool check_bit_balance(const BijectionTable& f) {
    const std::size_t half = f.table.size() / 2;
    for (unsigned b = 0; b < f.n; ++b) {
        std::size_t zeros = 0;
        for (auto v : f.table) zeros += ((v >> b) & 1U) == 0;
        if (zeros != half) return false;
    }
    return true;
}

BijectionTable maj_completion() {
    return BijectionTable::from_function(3, [](std::uint64_t x) {
        const std::uint64_t a = x & 1U, b = (x >> 1) & 1U, c = (x >> 2) & 1U;
        const std::uint64_t maj = (a & b) ^ (b & c) ^ (c & a);
        return maj | ((a ^ b) << 1) | ((a ^ c) << 2);
    });
}

BijectionTable ch_completion() {
    return BijectionTable::from_function(3, [](std::uint64_t x) {
        const std::uint64_t a = x & 1U, b = (x >> 1) & 1U, c = (x >> 2) & 1U;
        const std::uint64_t ch = (a & b) ^ ((a ^ 1U) & c);
        return a | ((b ^ c) << 1) | (ch << 2);
    });
}

BijectionTable sum_completion() {
    return BijectionTable::from_function(3, [](std::uint64_t x) {
        const std::uint64_t c = x & 1U, a = (x >> 1) & 1U, b = (x >> 2) & 1U;
        return c | (a << 1) | ((a ^ b ^ c) << 2);
    });
}

DenseOperator dense_recip_transform(const BijectionTable& f) {
    require_dense_size(f.n);
    const std::size_t dim = f.size();
    const double scale = 1.0 / static_cast<double>(dim);
    DenseOperator r(dim);
    for (std::uint64_t kappa = 0; kappa < dim; ++kappa) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            long long acc = 0;
            for (std::uint64_t x = 0; x < dim; ++x) acc += (parity_dot(kappa, f(x)) ^ parity_dot(x, k)) ? -1 : 1;
            r(kappa, k) = scale * static_cast<double>(acc);
        }
    }
    return r;
}

DenseOperator dense_bare_transform(const BijectionTable& f) {
    require_dense_size(f.n);
    const std::size_t dim = f.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    DenseOperator b(dim);
    for (std::uint64_t kappa = 0; kappa < dim; ++kappa)
        for (std::uint64_t x = 0; x < dim; ++x) b(kappa, x) = parity_dot(kappa, f(x)) ? -scale : scale;
    return b;
}

double verify_chain_rule(const BijectionTable& f, const BijectionTable& g) {
    if (f.n != g.n) throw ValidationError("chain rule: bit counts differ");
    if (f.n > 10) throw SizeError("chain rule check limited to 10 bits");
    return dense_recip_transform(compose(f, g)).max_abs_diff(dense_recip_transform(f) * dense_recip_transform(g));
}

PartialOracle oracle_from_table(const BijectionTable& f) {
    const auto wires = iota_wires(f.n);
    PartialOracle out;
    out.direct = permutation_gate(f.n, f.table, wires);
    out.reciprocal = hadamard_conjugate(out.direct, wires);
    out.index_qubits = wires;
    out.f_wires = wires;
    out.kappa_wires = wires;
    return out;
}

Circuit parallel_iteration_circuit(const PartialOracle& oracle, MatchConvention convention) {
    const unsigned n = oracle.direct.num_qubits();
    if (oracle.reciprocal.num_qubits() != n) throw ValidationError("direct and reciprocal circuits differ in width");
    if (oracle.f_wires.size() != oracle.index_qubits.size() || oracle.kappa_wires.size() != oracle.index_qubits.size())
        throw ValidationError("wire maps must cover every index qubit");
    const Circuit walsh = layer(n, GateKind::H, oracle.index_qubits);
    const GateKind recip_phase = convention == MatchConvention::AllZeros ? GateKind::S : GateKind::Sdg;
    Circuit out(n);
    out.append(conjugate(oracle.direct, layer(n, GateKind::S, oracle.f_wires))).barrier();
    out.append(walsh).barrier();
    out.append(conjugate(oracle.reciprocal, layer(n, recip_phase, oracle.kappa_wires))).barrier();
    out.append(walsh);
    return out.finalize();
}

Circuit sequential_iteration_circuit(const PartialOracle& oracle, unsigned ell) {
    if (ell >= oracle.f_wires.size() || ell >= oracle.kappa_wires.size())
        throw ValidationError("oracle bit " + std::to_string(ell) + " out of range");
    const unsigned n = oracle.direct.num_qubits();
    const Circuit walsh = layer(n, GateKind::H, oracle.index_qubits);
    const unsigned f_wire = oracle.f_wires[ell];
    const unsigned kappa_wire = oracle.kappa_wires[ell];
    Circuit out(n);
    out.append(conjugate(oracle.direct, layer(n, GateKind::S, std::span(&f_wire, 1))));
    out.append(walsh);
    out.append(conjugate(oracle.reciprocal, layer(n, GateKind::S, std::span(&kappa_wire, 1))));
    out.append(walsh);
    return out.finalize();
}

void run_parallel_iteration(Statevector& state, const PartialOracle& oracle, MatchConvention convention) {
    state.apply(parallel_iteration_circuit(oracle, convention));
}

void run_sequential_iteration(Statevector& state, unsigned ell, const PartialOracle& oracle) {
    state.apply(sequential_iteration_circuit(oracle, ell));
}

DataWireUnitary data_wire_unitary(const Circuit& circuit, std::span<const unsigned> data_wires,
                                  std::span<const AncillaWire> ancillas) {
    const unsigned n = circuit.num_qubits();
    const unsigned d = static_cast<unsigned>(data_wires.size());
    require_dense_size(d);
    const std::size_t dim = std::size_t{1} << d;

    std::uint64_t data_mask = 0;
    for (unsigned q : data_wires) data_mask |= std::uint64_t{1} << q;
    std::uint64_t anc_mask = 0;
    for (const auto& a : ancillas) anc_mask |= std::uint64_t{1} << a.qubit;
    if (data_mask & anc_mask) throw ValidationError("data and ancilla wires overlap");

    const double r = 1.0 / std::sqrt(2.0);
    // <out-state | bit> for one ancilla.
    auto out_overlap = [r](WireState s, unsigned bit) -> double {
        switch (s) {
        case WireState::Zero: return bit ? 0.0 : 1.0;
        case WireState::Plus: return r;
        case WireState::Minus: return bit ? -r : r;
        }
        return 0.0;
    };

    DataWireUnitary result{DenseOperator(dim), 0.0};
    Statevector state(n);
    for (std::uint64_t col = 0; col < dim; ++col) {
        state.set_basis(0);
        for (unsigned j = 0; j < d; ++j)
            if ((col >> j) & 1U) state.apply({GateKind::X, {data_wires[j]}, {}});
        for (const auto& a : ancillas) {
            if (a.in == WireState::Minus) state.apply({GateKind::X, {a.qubit}, {}});
            if (a.in != WireState::Zero) state.apply({GateKind::H, {a.qubit}, {}});
        }
        state.apply(circuit);

        double kept = 0.0;
        for (std::uint64_t row = 0; row < dim; ++row) {
            std::uint64_t base = 0;
            for (unsigned j = 0; j < d; ++j)
                if ((row >> j) & 1U) base |= std::uint64_t{1} << data_wires[j];
            Complex acc{};
            const std::size_t anc_count = ancillas.size();
            for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << anc_count); ++pattern) {
                std::uint64_t idx = base;
                double weight = 1.0;
                for (std::size_t a = 0; a < anc_count; ++a) {
                    const unsigned bit = (pattern >> a) & 1U;
                    if (bit) idx |= std::uint64_t{1} << ancillas[a].qubit;
                    weight *= out_overlap(ancillas[a].out, bit);
                }
                if (weight != 0.0) acc += weight * state.amplitude(idx);
            }
            result.unitary(row, col) = acc;
            kept += std::norm(acc);
        }
        result.leakage = std::max(result.leakage, 1.0 - kept);
    }
    return result;
}

} // namespace poracle
