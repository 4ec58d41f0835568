// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "poracle/algo.hpp"
#include "poracle/frame.hpp"
#include "poracle/gates.hpp"
#include "poracle/programs.hpp"
#include "poracle/verify.hpp"

using namespace poracle;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

ref::Matrix to_ref(const DenseOperator& op) {
    ref::Matrix m(op.dim(), std::vector<ref::C>(op.dim()));
    for (std::size_t i = 0; i < op.dim(); ++i)
        for (std::size_t j = 0; j < op.dim(); ++j) m[i][j] = op(i, j);
    return m;
}

WordRegisterRef word(const char* name, unsigned first, unsigned width) {
    WordRegisterRef r{name, {}};
    for (unsigned j = 0; j < width; ++j) r.qubits.push_back(first + j);
    return r;
}

std::vector<unsigned> range(unsigned first, unsigned count) {
    std::vector<unsigned> out(count);
    for (unsigned j = 0; j < count; ++j) out[j] = first + j;
    return out;
}

std::vector<std::uint64_t> tabulate(unsigned n, const std::function<std::uint64_t(std::uint64_t)>& fn) {
    std::vector<std::uint64_t> t(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = fn(x);
    return t;
}

std::vector<std::uint64_t> flat_table(const ProgramTape& tape) {
    const RegisterShape shape = tape.shape();
    return tabulate(shape.total(), [&](std::uint64_t x) { return shape.join(calculate(tape, shape.split(x))); });
}

double prob_of(const Distribution& d, const std::vector<std::uint64_t>& key) {
    const auto it = d.find(key);
    return it == d.end() ? 0.0 : it->second;
}

double ancilla_residual(const IterationResult& r) {
    std::vector<unsigned> anc;
    if (r.layout.carry) anc.push_back(*r.layout.carry);
    if (r.layout.minus_anc) anc.push_back(*r.layout.minus_anc);
    if (r.layout.scratch) anc.insert(anc.end(), r.layout.scratch->qubits.begin(), r.layout.scratch->qubits.end());
    if (anc.empty()) return 0.0;
    const std::vector<QubitGroup> groups = {{"anc", anc}};
    return 1.0 - prob_of(register_distribution(r.state, groups), {0});
}

Statevector searched(const BijectionTable& f, MatchConvention convention) {
    const PartialOracle oracle = oracle_from_table(f);
    Statevector s(f.n);
    s.apply(layer(f.n, GateKind::H, oracle.index_qubits));
    run_parallel_iteration(s, oracle, convention);
    return s;
}

// 1
Verdict simple_chain() {
    const auto t0 = Clock::now();
    const std::vector<std::uint64_t> target{4, 1};
    const IterationResult r = partial_oracle_iteration(chain_program(4), target);
    const double t = seconds_since(t0);
    const double p = prob_of(r.distribution, {4, 7});
    const bool unique = r.distribution.size() == 1 || p >= 0.999;
    return {p >= 0.999 && unique && r.iterations == 1 && t < 10 && r.layout.num_qubits <= 16,
            fmt("p(4,7)=%.9f iterations=%u qubits=%u time=%.2fs (need p>=0.999, 1 iteration, <=16 qubits, <10s)", p,
                r.iterations, r.layout.num_qubits, t)};
}

// 2
Verdict chain_sweep() {
    const auto t0 = Clock::now();
    const ProgramTape tape = chain_program(4);
    const RegisterShape shape = tape.shape();
    const auto table = flat_table(tape);
    unsigned ok = 0;
    double worst = 1.0;
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        const IterationResult r = partial_oracle_iteration(tape, shape.split(table[x]));
        const double p = prob_of(r.distribution, shape.split(x));
        worst = std::min(worst, p);
        ok += p >= 0.999;
    }
    const double t = seconds_since(t0);
    return {ok == 256 && t < 900,
            fmt("%u/256 targets recovered, min p=%.9f, time=%.1fs (need 256/256 at p>=0.999, <15min)", ok, worst, t)};
}

// 3a
Verdict toy_hash_w2() {
    const auto t0 = Clock::now();
    const ProgramTape tape = toy_hash_program(2);
    std::mt19937_64 rng(2024);
    unsigned ok = 0;
    double worst = 1.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<std::uint64_t> seeds(5);
        for (auto& s : seeds) s = rng() & 3;
        const IterationResult r = partial_oracle_iteration(tape, calculate(tape, seeds));
        const double p = prob_of(r.distribution, seeds);
        worst = std::min(worst, p);
        ok += p >= 0.999;
    }
    const double t = seconds_since(t0);
    return {ok == 50 && t < 300,
            fmt("width 2: %u/50 random seeds recovered, min p=%.9f, time=%.1fs (need 50/50 at p>=0.999, <5min)", ok,
                worst, t)};
}

// 3b
Verdict toy_hash_w4() {
    const auto t0 = Clock::now();
    const ProgramTape tape = toy_hash_program(4);
    const std::vector<std::uint64_t> target{13, 1, 7, 4, 10};
    IterationOptions o;
    o.memory_budget = std::uint64_t{4} << 30;
    const IterationResult r = partial_oracle_iteration(tape, target, o);
    const double t = seconds_since(t0);
    const double p = prob_of(r.distribution, {7, 5, 2, 10, 8});
    const double gib =
        static_cast<double>(Statevector::bytes_required(r.layout.num_qubits, o.precision)) / (1 << 30);
    return {p >= 0.999 && r.layout.num_qubits <= 28 && gib <= 4 && t <= 1800,
            fmt("width 4: p(7,5,2,10,8)=%.9f qubits=%u state=%.2fGiB time=%.0fs (need p>=0.999, <=28 qubits, "
                "<=4GiB, <=30min)",
                p, r.layout.num_qubits, gib, t)};
}

// 4
Verdict gf2_table() {
    const auto t = invert(matrix_of(ShiftType(4, {0, -1}, {-3})));
    const bool table = t && t->column(0) == 7 && t->column(1) == 9 && t->column(2) == 11 && t->column(3) == 15;
    std::mt19937_64 rng(4);
    unsigned found = 0, bad = 0;
    while (found < 1000) {
        const unsigned w = 2 + static_cast<unsigned>(rng() % 7);
        std::vector<int> r, s;
        for (int i = 1 + static_cast<int>(rng() % 5); i > 0; --i)
            r.push_back(static_cast<int>(rng() % (2 * w)) - static_cast<int>(w));
        for (int i = static_cast<int>(rng() % 3); i > 0; --i) {
            const int c = 1 + static_cast<int>(rng() % (w - 1));
            s.push_back(rng() % 2 ? c : -c);
        }
        const ShiftType mu(w, r, s);
        const auto inv = invert(matrix_of(mu));
        if (!inv) continue;
        ++found;
        bool ok = *inv * matrix_of(mu) == GF2Matrix::identity(w);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w) && ok; ++x)
            ok = inv->apply(ref::shift(w, r, s, x)) == x;
        bad += !ok;
    }
    return {table && bad == 0,
            fmt("table columns %s, T*M=I failures %u/1000 (need exact table, 0 failures)",
                table ? "7,9,11,15" : "WRONG", bad)};
}

// 5
Verdict recip_gates() {
    double worst = 0.0;
    auto take = [&worst](const std::vector<std::uint64_t>& table, unsigned n, const DataWireUnitary& u) {
        worst = std::max({worst, u.leakage, ref::diff_up_to_phase(ref::recip(table, n), to_ref(u.unitary))});
    };
    const AncillaWire minus{3, WireState::Minus, WireState::Minus};
    take(tabulate(3, [](std::uint64_t x) {
             const int a = ref::bit(x, 0), b = ref::bit(x, 1), c = ref::bit(x, 2);
             return ref::maj(a, b, c) | ((a ^ b) << 1) | ((a ^ c) << 2);
         }),
         3, data_wire_unitary(recip_maj_gate(4, 0, 1, 2, 3), range(0, 3), std::span(&minus, 1)));
    take(tabulate(3, [](std::uint64_t x) {
             const int a = ref::bit(x, 0), b = ref::bit(x, 1), c = ref::bit(x, 2);
             return a | ((b ^ c) << 1) | (ref::ch(a, b, c, 1) << 2);
         }),
         3, data_wire_unitary(recip_ch_gate(4, 0, 1, 2, 3), range(0, 3), std::span(&minus, 1)));
    take(tabulate(3, [](std::uint64_t x) {
             const int c = ref::bit(x, 0), a = ref::bit(x, 1), b = ref::bit(x, 2);
             return c | (a << 1) | ((a ^ b ^ c) << 2);
         }),
         3, data_wire_unitary(recip_sum_gate(3, 0, 1, 2), range(0, 3)));
    for (unsigned w = 1; w <= 3; ++w) {
        const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
        const AncillaWire anc[] = {{2 * w, WireState::Plus, WireState::Plus},
                                   {2 * w + 1, WireState::Minus, WireState::Minus}};
        take(tabulate(2 * w,
                      [w, mask](std::uint64_t x) { return (x & mask) | ((((x & mask) + (x >> w)) & mask) << w); }),
             2 * w,
             data_wire_unitary(recip_adder_gate(2 * w + 2, word("k1", 0, w), word("k2", w, w), 2 * w, 2 * w + 1),
                               range(0, 2 * w), anc));
        for (const auto& mu : invertible_shift_types(w))
            take(tabulate(w, [&](std::uint64_t x) { return ref::shift(w, mu.rotr, mu.shr, x); }), w,
                 data_wire_unitary(recip_shifter_gate(2 * w, mu, word("k", 0, w), word("s", w, w)), range(0, w)));
    }
    return {worst <= 1e-9, fmt("max deviation %.3e over Maj, Ch, sum, adder w<=3, shifters w<=3 (tol 1e-9)", worst)};
}

// 6
Verdict hadamard_identity() {
    double worst = 0.0;
    auto check = [&worst](const BijectionTable& f) {
        const DenseOperator h = hadamard_matrix(f.n);
        worst = std::max(worst, dense_recip_transform(f).max_abs_diff(h * f.permutation_matrix() * h));
    };
    for (const auto& f : {maj_completion(), ch_completion(), sum_completion()}) check(f);
    check(BijectionTable{4, flat_table(chain_program(2))});
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) check(BijectionTable::random(1 + static_cast<unsigned>(i % 8), rng));
    return {worst <= 1e-12, fmt("max entry deviation %.3e, 3 library + chain + 100 random, n<=8 (tol 1e-12)", worst)};
}

// 7
Verdict chain_rule() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto f = BijectionTable::random(5, rng);
        const auto g = BijectionTable::random(5, rng);
        worst = std::max(worst, verify_chain_rule(f, g));
    }
    const ProgramTape chain = chain_program(2);
    const auto u = tape_recip_unitary(chain);
    const double circuit = std::max(u.leakage, ref::diff_up_to_phase(ref::recip(flat_table(chain), 4), to_ref(u.unitary)));
    return {worst <= 1e-9 && circuit <= 1e-9,
            fmt("dense pairs %.3e, circuit chain program w=2 %.3e (tol 1e-9)", worst, circuit)};
}

// 8
Verdict sequential_parallel() {
    std::mt19937_64 rng(8);
    double overlap_gap = 0.0, phase = 0.0;
    for (unsigned n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = BijectionTable::random(n, rng);
            const PartialOracle oracle = oracle_from_table(f);
            Statevector seq(n);
            seq.apply(layer(n, GateKind::H, oracle.index_qubits));
            for (unsigned ell = 0; ell < n; ++ell) run_sequential_iteration(seq, ell, oracle);
            const Statevector par = searched(f, MatchConvention::AllZeros);
            std::complex<double> ov = 0;
            for (std::size_t i = 0; i < par.size(); ++i) ov += std::conj(par.amplitude(i)) * seq.amplitude(i);
            overlap_gap = std::max(overlap_gap, 1 - std::abs(ov));
            const auto amp = par.amplitude(f.inverse()(0));
            phase = std::max(phase, std::abs(std::remainder(std::arg(amp) - std::numbers::pi * n / 4, 2 * std::numbers::pi)));
        }
    return {overlap_gap <= 1e-9 && phase <= 1e-6,
            fmt("1-overlap %.3e (tol 1e-9), phase error %.3e rad (tol 1e-6), 100 bijections n<=5", overlap_gap, phase)};
}

// 9
Verdict convention_flip() {
    std::mt19937_64 rng(9);
    double worst = 1.0;
    for (unsigned n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = BijectionTable::random(n, rng);
            const Statevector s = searched(f, MatchConvention::AllOnes);
            worst = std::min(worst, s.probability(f.inverse()((std::uint64_t{1} << n) - 1)));
        }
    return {worst >= 0.999, fmt("min p(f^-1(1..1))=%.9f over 100 bijections n<=5 (need >=0.999)", worst)};
}

// 10
Verdict target_independence() {
    std::mt19937_64 rng(10);
    const ProgramTape tape = chain_program(2);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::vector<std::uint64_t> target{rng() & 3, rng() & 3};
        IterationOptions both;
        both.target_in_reciprocal = true;
        const auto a = partial_oracle_iteration(tape, target).distribution;
        const auto b = partial_oracle_iteration(tape, target, both).distribution;
        std::set<std::vector<std::uint64_t>> keys;
        for (const auto& [k, p] : a) keys.insert(k);
        for (const auto& [k, p] : b) keys.insert(k);
        double tv = 0;
        for (const auto& k : keys) tv += std::abs(prob_of(a, k) - prob_of(b, k));
        worst = std::max(worst, tv / 2);
    }
    return {worst <= 1e-9, fmt("max total-variation distance %.3e over 50 targets (tol 1e-9)", worst)};
}

// 11
Verdict property_suites() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(11);
    double norm = 0.0, adj = 0.0, hygiene = 0.0;
    unsigned oracle_bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const unsigned n = 3 + static_cast<unsigned>(trial % 6);
        Circuit c(n);
        for (int g = 0; g < 200; ++g) {
            const unsigned t = static_cast<unsigned>(rng() % n), u = static_cast<unsigned>(rng() % n);
            switch (rng() % 5) {
            case 0: c.h(t); break;
            case 1: c.s(t); break;
            case 2: c.sdg(t); break;
            case 3:
                if (t != u) c.x(t, {u});
                break;
            default:
                if (t != u) c.swap(t, u);
            }
        }
        c.finalize();
        Statevector s(n);
        s.apply(c);
        norm = std::max(norm, std::abs(s.norm_squared() - 1));
        s.apply(adjoint(c));
        adj = std::max(adj, 1 - s.probability(0));
        if (!(adjoint(adjoint(c)) == c)) adj = 1.0;
    }
    for (unsigned w = 1; w <= 3; ++w)
        for (const ProgramTape& tape : {chain_program(w)}) {
            const auto table = flat_table(tape);
            const BijectionTable f{2 * w, table};
            oracle_bad += !check_bijective(f) || !check_bit_balance(f);
            for (std::uint64_t x = 0; x < table.size(); x += 3)
                hygiene = std::max(hygiene, ancilla_residual(partial_oracle_iteration(tape, tape.shape().split(table[x]))));
        }
    {
        const ProgramTape tape = toy_hash_program(2);
        oracle_bad += !check_bijective(BijectionTable{10, flat_table(tape)});
        std::vector<std::uint64_t> seeds{1, 3, 0, 2, 1};
        hygiene = std::max(hygiene, ancilla_residual(partial_oracle_iteration(tape, calculate(tape, seeds))));
    }
    for (const auto& f : {maj_completion(), ch_completion(), sum_completion()})
        oracle_bad += !check_bijective(f) || !check_bit_balance(f);
    bool suites = true;
    for (const auto& name : suite_names()) suites = suites && run_suite(name, 11).passed();
    const double t = seconds_since(t0);
    return {norm <= 1e-12 && adj <= 1e-12 && hygiene <= 1e-9 && oracle_bad == 0 && suites && t < 600,
            fmt("norm %.1e, adjoint %.1e, ancilla residual %.1e, oracle failures %u, verify suites %s, time=%.1fs",
                norm, adj, hygiene, oracle_bad, suites ? "green" : "RED", t)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    bool long_run = false;
    std::vector<std::string> only;
    app.add_flag("--long", long_run, "Include the width-4 toy hash");
    app.add_option("--only", only, "Run only these criteria (e.g. 3b)");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        std::string id;
        std::string name;
        std::function<Verdict()> run;
        bool needs_long = false;
    };
    const std::vector<Criterion> criteria = {
        {"1", "simple chain", simple_chain},
        {"2", "exhaustive chain sweep", chain_sweep},
        {"3a", "toy hash", toy_hash_w2},
        {"3b", "toy hash", toy_hash_w4, true},
        {"4", "GF(2) inverse table", gf2_table},
        {"5", "dense reciprocal gates", recip_gates},
        {"6", "Hadamard conjugation", hadamard_identity},
        {"7", "chain rule", chain_rule},
        {"8", "sequential/parallel and phase", sequential_parallel},
        {"9", "convention flip", convention_flip},
        {"10", "target independence", target_independence},
        {"11", "property suites", property_suites},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        if (c.needs_long && !long_run) {
            std::printf("SKIP [%s] %s: width 4 run is opt-in, pass --long\n", c.id.c_str(), c.name.c_str());
            continue;
        }
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s [%s] %s: %s\n", v.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
