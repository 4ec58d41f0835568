#include "poracle/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "poracle/errors.hpp"
#include "poracle/gates.hpp"
#include "poracle/gf2.hpp"
#include "poracle/programs.hpp"

namespace poracle {

namespace {

constexpr double dense_tol = 1e-9;

CheckResult check_max(std::string name, double deviation, double tolerance) {
    return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

WordRegisterRef word(std::string name, unsigned first, unsigned width) {
    WordRegisterRef r{std::move(name), {}};
    for (unsigned j = 0; j < width; ++j) r.qubits.push_back(first + j);
    return r;
}

std::vector<unsigned> range(unsigned first, unsigned count) {
    std::vector<unsigned> out(count);
    for (unsigned j = 0; j < count; ++j) out[j] = first + j;
    return out;
}

/// max(up-to-phase deviation, ancilla leakage)
double recip_deviation(const BijectionTable& f, const DataWireUnitary& u) {
    return std::max(max_diff_up_to_phase(dense_recip_transform(f), u.unitary), u.leakage);
}

ShiftType random_shift_type(std::mt19937_64& rng, unsigned width) {
    const int w = static_cast<int>(width);
    std::uniform_int_distribution<int> rot(-(w - 1), w - 1);
    std::uniform_int_distribution<int> shr_amount(1, w - 1);
    std::uniform_int_distribution<int> count_rot(1, 5);
    std::uniform_int_distribution<int> count_shr(0, 2);
    std::bernoulli_distribution sign;
    std::vector<int> r, s;
    for (int i = count_rot(rng); i > 0; --i) r.push_back(rot(rng));
    for (int i = count_shr(rng); i > 0; --i) s.push_back(sign(rng) ? shr_amount(rng) : -shr_amount(rng));
    return ShiftType(width, r, s);
}

SuiteReport suite_gates(std::uint64_t seed) {
    SuiteReport report{"gates", {}};
    const AncillaWire minus{3, WireState::Minus, WireState::Minus};

    report.checks.push_back(check_max(
        "recip_maj", recip_deviation(maj_completion(), data_wire_unitary(recip_maj_gate(4, 0, 1, 2, 3),
                                                                         range(0, 3), std::span(&minus, 1))),
        dense_tol));
    report.checks.push_back(check_max(
        "recip_ch", recip_deviation(ch_completion(), data_wire_unitary(recip_ch_gate(4, 0, 1, 2, 3), range(0, 3),
                                                                       std::span(&minus, 1))),
        dense_tol));
    report.checks.push_back(check_max(
        "recip_sum", recip_deviation(sum_completion(), data_wire_unitary(recip_sum_gate(3, 0, 1, 2), range(0, 3))),
        dense_tol));

    for (unsigned w = 1; w <= 3; ++w) {
        const unsigned carry = 2 * w, anc = 2 * w + 1;
        const std::uint64_t mask = word_mask(w);
        const auto add = BijectionTable::from_function(2 * w, [w, mask](std::uint64_t x) {
            const std::uint64_t x1 = x & mask, x2 = x >> w;
            return x1 | (((x1 + x2) & mask) << w);
        });
        const AncillaWire anc_wires[] = {{carry, WireState::Plus, WireState::Plus},
                                         {anc, WireState::Minus, WireState::Minus}};
        const Circuit c = recip_adder_gate(2 * w + 2, word("k1", 0, w), word("k2", w, w), carry, anc);
        report.checks.push_back(check_max("recip_adder w=" + std::to_string(w),
                                          recip_deviation(add, data_wire_unitary(c, range(0, 2 * w), anc_wires)),
                                          dense_tol));

        double worst = 0.0;
        for (std::uint64_t value = 0; value <= mask; ++value) {
            const auto addc =
                BijectionTable::from_function(w, [value, mask](std::uint64_t x) { return (x + value) & mask; });
            const AncillaWire plus{2 * w, WireState::Plus, WireState::Plus};
            const Circuit cc =
                recip_const_adder_gate(2 * w + 1, word("k", 0, w), value, word("scratch", w, w), 2 * w);
            worst = std::max(worst, recip_deviation(addc, data_wire_unitary(cc, range(0, w), std::span(&plus, 1))));
        }
        report.checks.push_back(check_max("recip_const_adder w=" + std::to_string(w), worst, dense_tol));
    }

    for (unsigned w = 2; w <= 3; ++w) {
        double worst = 0.0;
        for (const auto& mu : invertible_shift_types(w)) {
            const auto f = BijectionTable::from_function(w, [&mu](std::uint64_t x) { return shift_apply(mu, x); });
            const Circuit c = recip_shifter_gate(2 * w, mu, word("k", 0, w), word("scratch", w, w));
            worst = std::max(worst, recip_deviation(f, data_wire_unitary(c, range(0, w))));
        }
        report.checks.push_back(check_max("recip_shifter w=" + std::to_string(w), worst, dense_tol));
    }

    // R[f] = H P_f H entrywise.
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    auto hph = [](const BijectionTable& f) {
        const DenseOperator h = hadamard_matrix(f.n);
        return h * f.permutation_matrix() * h;
    };
    for (const auto& f : {maj_completion(), ch_completion(), sum_completion()})
        worst = std::max(worst, dense_recip_transform(f).max_abs_diff(hph(f)));
    for (int i = 0; i < 100; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(i % 8);
        const auto f = BijectionTable::random(n, rng);
        worst = std::max(worst, dense_recip_transform(f).max_abs_diff(hph(f)));
    }
    report.checks.push_back(check_max("hadamard conjugation", worst, 1e-12));
    return report;
}

SuiteReport suite_chain_rule(std::uint64_t seed) {
    SuiteReport report{"chain-rule", {}};
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto f = BijectionTable::random(5, rng);
        const auto g = BijectionTable::random(5, rng);
        worst = std::max(worst, verify_chain_rule(f, g));
    }
    report.checks.push_back(check_max("dense n=5 x100", worst, dense_tol));

    const ProgramTape chain = chain_program(2);
    report.checks.push_back(
        check_max("chain program w=2", recip_deviation(tape_bijection(chain), tape_recip_unitary(chain)), dense_tol));
    return report;
}

SuiteReport suite_gf2(std::uint64_t seed) {
    SuiteReport report{"gf2", {}};
    const ShiftType mu_t = complement(ShiftType(4, {0, 1}, {3}));
    const auto t = invert(matrix_of(mu_t));
    double table_dev = 1.0;
    if (t && mu_t == ShiftType(4, {0, -1}, {-3})) {
        const std::uint64_t expected[] = {7, 9, 11, 15};
        table_dev = 0.0;
        for (unsigned j = 0; j < 4; ++j)
            if (t->column(j) != expected[j]) table_dev = 1.0;
    }
    report.checks.push_back(check_max("inverse table (0,-1)(-3)", table_dev, 0.0));

    report.checks.push_back(check_max("(0,1)() singular", invert(matrix_of(ShiftType(4, {0, 1}))) ? 1.0 : 0.0, 0.0));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> width_dist(2, 8);
    unsigned found = 0, bad = 0;
    while (found < 1000) {
        const ShiftType mu = random_shift_type(rng, width_dist(rng));
        const GF2Matrix m = matrix_of(mu);
        const auto inv = invert(m);
        if (!inv) continue;
        ++found;
        const GF2Matrix id = GF2Matrix::identity(mu.width);
        if (!(*inv * m == id) || !(m * *inv == id)) ++bad;
    }
    report.checks.push_back(check_max("T*M = I, 1000 random invertible", bad, 0.0));

    // Rotation-only on power-of-two widths: invertible iff an odd number of
    // distinct rotations survive XOR cancellation.
    bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const unsigned w = 2U << (i % 3);
        std::uniform_int_distribution<int> rot(0, static_cast<int>(w) - 1);
        std::vector<int> amounts;
        std::uint64_t parity = 0;
        for (int k = 1 + i % 6; k > 0; --k) {
            const int a = rot(rng);
            amounts.push_back(a);
            parity ^= std::uint64_t{1} << a;
        }
        const bool odd = std::popcount(parity) % 2 == 1;
        if (odd != invert(matrix_of(ShiftType(w, amounts))).has_value()) ++bad;
    }
    report.checks.push_back(check_max("odd rotation count criterion", bad, 0.0));
    return report;
}

double phase_distance(double a, double b) {
    double d = std::fmod(a - b, 2 * std::numbers::pi);
    if (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    if (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    return std::abs(d);
}

SuiteReport suite_conventions(std::uint64_t seed) {
    SuiteReport report{"conventions", {}};
    std::mt19937_64 rng(seed);
    double zeros_loss = 0.0, ones_loss = 0.0, phase = 0.0;
    for (unsigned n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = BijectionTable::random(n, rng);
            const auto inv = f.inverse();
            const PartialOracle oracle = oracle_from_table(f);
            const Circuit hs = layer(n, GateKind::H, oracle.index_qubits);

            Statevector zeros(n);
            zeros.apply(hs);
            run_parallel_iteration(zeros, oracle, MatchConvention::AllZeros);
            const auto amp = zeros.amplitude(inv(0));
            zeros_loss = std::max(zeros_loss, 1.0 - std::norm(amp));
            phase = std::max(phase, phase_distance(std::arg(amp), std::numbers::pi * n / 4));

            Statevector ones(n);
            ones.apply(hs);
            run_parallel_iteration(ones, oracle, MatchConvention::AllOnes);
            ones_loss = std::max(ones_loss, 1.0 - ones.probability(inv(word_mask(n))));
        }
    }
    report.checks.push_back(check_max("all-zeros probability", zeros_loss, 1e-3));
    report.checks.push_back(check_max("phase pi n/4", phase, 1e-6));
    report.checks.push_back(check_max("all-ones probability", ones_loss, 1e-3));
    return report;
}

SuiteReport suite_sequential(std::uint64_t seed) {
    SuiteReport report{"sequential", {}};
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (unsigned n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = BijectionTable::random(n, rng);
            const PartialOracle oracle = oracle_from_table(f);
            const Circuit hs = layer(n, GateKind::H, oracle.index_qubits);
            Statevector par(n), seq(n);
            par.apply(hs);
            seq.apply(hs);
            run_parallel_iteration(par, oracle);
            for (unsigned ell = 0; ell < n; ++ell) run_sequential_iteration(seq, ell, oracle);
            std::complex<double> overlap = 0.0;
            for (std::size_t i = 0; i < par.size(); ++i) overlap += std::conj(par.amplitude(i)) * seq.amplitude(i);
            worst = std::max(worst, 1.0 - std::abs(overlap));
        }
    }
    report.checks.push_back(check_max("sequential vs parallel overlap", worst, 1e-9));
    return report;
}

} // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double SuiteReport::max_deviation() const {
    double out = 0.0;
    for (const auto& c : checks) out = std::max(out, c.deviation);
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"gates", "chain-rule", "gf2", "conventions", "sequential"};
    return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
    if (name == "gates") return suite_gates(seed);
    if (name == "chain-rule") return suite_chain_rule(seed);
    if (name == "gf2") return suite_gf2(seed);
    if (name == "conventions") return suite_conventions(seed);
    if (name == "sequential") return suite_sequential(seed);
    throw ValidationError("unknown suite '" + std::string(name) + "'");
}

BijectionTable tape_bijection(const ProgramTape& tape) {
    const RegisterShape shape = tape.shape();
    if (shape.total() > 12) throw SizeError("tape_bijection supports at most 12 index bits");
    return BijectionTable::from_function(shape.total(), [&](std::uint64_t x) {
        const auto values = shape.split(x);
        return shape.join(calculate(tape, values));
    });
}

namespace {

std::vector<AncillaWire> frame_ancillas(const FrameLayout& layout, bool reciprocal) {
    std::vector<AncillaWire> out;
    if (layout.carry)
        out.push_back({*layout.carry, WireState::Zero, reciprocal ? WireState::Plus : WireState::Zero});
    if (layout.minus_anc)
        out.push_back({*layout.minus_anc, WireState::Zero, reciprocal ? WireState::Minus : WireState::Zero});
    return out;
}

} // namespace

DataWireUnitary tape_recip_unitary(const ProgramTape& tape) {
    const FrameLayout layout = allocate_layout(tape);
    const auto emitted = emit_recip_circuit(tape, layout);
    const auto ancillas = frame_ancillas(layout, true);
    return data_wire_unitary(emitted.circuit, emitted.output_wires, ancillas);
}

DataWireUnitary tape_direct_unitary(const ProgramTape& tape) {
    const FrameLayout layout = allocate_layout(tape);
    const std::vector<std::uint64_t> zeros(tape.registers().size(), 0);
    const auto emitted = emit_oracle_circuit(tape, layout, zeros);
    return data_wire_unitary(emitted.circuit, emitted.output_wires);
}

std::vector<ShiftType> invertible_shift_types(unsigned width, unsigned max_shr) {
    std::vector<ShiftType> out;
    std::vector<int> shr_values;
    for (int c = 1; c < static_cast<int>(width); ++c) {
        shr_values.push_back(c);
        shr_values.push_back(-c);
    }
    for (std::uint64_t rot_mask = 1; rot_mask < (std::uint64_t{1} << width); ++rot_mask) {
        std::vector<int> rotr;
        for (unsigned a = 0; a < width; ++a)
            if ((rot_mask >> a) & 1U) rotr.push_back(static_cast<int>(a));
        std::vector<std::vector<int>> shr_options = {{}};
        if (max_shr >= 1)
            for (int c : shr_values) shr_options.push_back({c});
        for (const auto& shr : shr_options) {
            ShiftType mu(width, rotr, shr);
            if (invert(matrix_of(mu))) out.push_back(std::move(mu));
        }
    }
    return out;
}

} // namespace poracle
