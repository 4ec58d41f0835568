#include "poracle/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "poracle/errors.hpp"
#include "poracle/frame.hpp"
#include "poracle/portable.hpp"
#include "poracle/programs.hpp"
#include "poracle/tape_text.hpp"
#include "poracle/verify.hpp"

namespace poracle::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double success_probability = 0.999;

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    unsigned width = 4;
    std::vector<std::uint64_t> target;
    std::vector<std::uint64_t> seeds;
    bool sweep_all = false;
    std::string convention = "zeros";
    std::string mode = "par";
    std::string precision = "double";
    unsigned rounds = 4;
    std::size_t shots = 0;
    std::uint64_t seed = 1;
    std::size_t top = 8;
    bool json = false;
};

std::uint64_t memory_budget() {
    const char* env = std::getenv(memory_budget_env);
    if (!env || !*env) return default_memory_budget;
    auto parsed = parse_byte_size(env);
    if (!parsed) throw ValidationError(std::string(memory_budget_env) + " is not a byte size: '" + env + "'");
    return *parsed;
}

IterationOptions iteration_options(const RunOptions& o) {
    IterationOptions it;
    it.convention = o.convention == "ones" ? MatchConvention::AllOnes : MatchConvention::AllZeros;
    it.mode = o.mode == "seq" ? IterationMode::Sequential : IterationMode::Parallel;
    it.precision = o.precision == "single" ? Precision::Single : Precision::Double;
    it.memory_budget = memory_budget();
    return it;
}

std::string format_values(const ProgramTape& tape, std::span<const std::uint64_t> values) {
    std::ostringstream s;
    for (std::size_t i = 0; i < values.size(); ++i)
        s << (i ? " " : "") << tape.registers()[i].name << '=' << values[i];
    return s.str();
}

Json values_json(const ProgramTape& tape, std::span<const std::uint64_t> values) {
    Json j = Json::object();
    for (std::size_t i = 0; i < values.size(); ++i) j[tape.registers()[i].name] = values[i];
    return j;
}

/// The index values the search should return, given the oracle target.
/// AllOnes matches g(x) = ~target, so the search target is complemented.
std::vector<std::uint64_t> oracle_target(const ProgramTape& tape, std::span<const std::uint64_t> g_target,
                                         MatchConvention convention) {
    std::vector<std::uint64_t> out(g_target.begin(), g_target.end());
    if (convention == MatchConvention::AllOnes)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= word_mask(tape.registers()[i].width);
    return out;
}

struct Solution {
    std::vector<std::uint64_t> values;
    double probability = 0.0;
    std::size_t count = 0;
};

std::vector<Solution> ranked(const Distribution& dist) {
    std::vector<Solution> out;
    for (const auto& [k, p] : dist) out.push_back({k, p, 0});
    std::stable_sort(out.begin(), out.end(),
                     [](const Solution& a, const Solution& b) { return a.probability > b.probability; });
    return out;
}

void sample(std::vector<Solution>& sols, std::size_t shots, std::uint64_t seed) {
    if (shots == 0 || sols.empty()) return;
    std::vector<double> weights;
    for (const auto& s : sols) weights.push_back(s.probability);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    for (std::size_t i = 0; i < shots; ++i) ++sols[pick(rng)].count;
}

Json gate_counts_json(const std::map<std::string, std::size_t>& counts) {
    Json j = Json::object();
    for (const auto& [k, v] : counts) j[k] = v;
    return j;
}

std::size_t total_gates(const std::map<std::string, std::size_t>& counts) {
    std::size_t n = 0;
    for (const auto& [k, v] : counts) n += v;
    return n;
}

Json config_json(const std::string& command, const RunOptions& o) {
    Json c;
    c["command"] = command;
    c["width"] = o.width;
    if (command == "run-toyhash") c["rounds"] = o.rounds;
    c["convention"] = o.convention;
    c["mode"] = o.mode;
    c["precision"] = o.precision;
    if (!o.target.empty()) c["target"] = o.target;
    if (!o.seeds.empty()) c["seeds"] = o.seeds;
    if (o.sweep_all) c["sweep_all"] = true;
    c["shots"] = o.shots;
    c["seed"] = o.seed;
    return c;
}

int run_single(const std::string& command, const ProgramTape& tape, const RunOptions& o, std::ostream& out) {
    const std::size_t nregs = tape.registers().size();
    std::vector<std::uint64_t> target = o.target;
    if (!o.seeds.empty()) {
        if (o.seeds.size() != nregs)
            throw ValidationError("--seeds needs " + std::to_string(nregs) + " values");
        target = calculate(tape, o.seeds);
    }
    if (target.size() != nregs) throw ValidationError("--target needs " + std::to_string(nregs) + " values");
    for (std::size_t i = 0; i < nregs; ++i)
        if (target[i] > word_mask(tape.registers()[i].width))
            throw ValidationError("target value " + std::to_string(target[i]) + " does not fit width " +
                                  std::to_string(tape.registers()[i].width));

    const IterationOptions it = iteration_options(o);
    const auto start = std::chrono::steady_clock::now();
    const IterationResult result = partial_oracle_iteration(tape, oracle_target(tape, target, it.convention), it);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<Solution> sols = ranked(result.distribution);
    sample(sols, o.shots, o.seed);
    const bool ok = !sols.empty() && sols.front().probability >= success_probability &&
                    calculate(tape, sols.front().values) == target &&
                    (o.seeds.empty() || sols.front().values == o.seeds);
    if (sols.size() > o.top) sols.resize(o.top);

    if (o.json) {
        Json j;
        j["solutions"] = Json::array();
        for (const auto& s : sols) {
            Json e;
            e["values"] = values_json(tape, s.values);
            e["probability"] = s.probability;
            if (o.shots) e["count"] = s.count;
            j["solutions"].push_back(e);
        }
        j["qubit_count"] = result.layout.num_qubits;
        j["gate_counts"] = gate_counts_json(result.gate_counts);
        j["iterations"] = result.iterations;
        j["config"] = config_json(command, o);
        out << j.dump(2) << '\n';
    } else {
        out << "target      " << format_values(tape, target) << '\n';
        out << "qubits      " << result.layout.num_qubits << '\n';
        out << "gates       " << total_gates(result.gate_counts) << '\n';
        out << "iterations  " << result.iterations << (o.mode == "seq" ? " (sequential)" : " (parallel)") << '\n';
        out << "solutions\n";
        for (const auto& s : sols) {
            out << "  " << format_values(tape, s.values) << "  p=" << std::fixed << std::setprecision(6)
                << s.probability;
            if (o.shots) out << "  count=" << s.count;
            out << '\n';
        }
        out << std::defaultfloat << "check       " << (ok ? "ok" : "FAILED") << '\n';
        out << "wall time   " << std::setprecision(3) << seconds << " s\n";
    }
    return ok ? exit_ok : exit_verification_failed;
}

int run_sweep(const std::string& command, const ProgramTape& tape, const RunOptions& o, std::ostream& out) {
    const RegisterShape shape = tape.shape();
    if (shape.total() > 16) throw ValidationError("--sweep-all supports at most 16 index bits");
    const IterationOptions it = iteration_options(o);
    const auto start = std::chrono::steady_clock::now();

    Json results = Json::array();
    std::size_t correct = 0, total = 0, qubits = 0;
    unsigned iterations = 0;
    std::map<std::string, std::size_t> gate_counts;
    double worst = 1.0;
    for (std::uint64_t flat = 0; flat < (std::uint64_t{1} << shape.total()); ++flat) {
        const auto target = shape.split(flat);
        const IterationResult r = partial_oracle_iteration(tape, oracle_target(tape, target, it.convention), it);
        const auto sols = ranked(r.distribution);
        const bool ok = !sols.empty() && sols.front().probability >= success_probability &&
                        calculate(tape, sols.front().values) == target;
        correct += ok;
        ++total;
        qubits = r.layout.num_qubits;
        iterations = r.iterations;
        gate_counts = r.gate_counts;
        const double p = sols.empty() ? 0.0 : sols.front().probability;
        worst = std::min(worst, p);
        if (o.json) {
            Json e;
            e["target"] = values_json(tape, target);
            e["values"] = sols.empty() ? Json::object() : values_json(tape, sols.front().values);
            e["probability"] = p;
            e["ok"] = ok;
            results.push_back(e);
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.json) {
        Json j;
        j["solutions"] = results;
        j["qubit_count"] = qubits;
        j["gate_counts"] = gate_counts_json(gate_counts);
        j["iterations"] = iterations;
        j["config"] = config_json(command, o);
        out << j.dump(2) << '\n';
    } else {
        out << "sweep       " << correct << '/' << total << " targets recovered\n";
        out << "min p       " << std::fixed << std::setprecision(6) << worst << std::defaultfloat << '\n';
        out << "qubits      " << qubits << '\n';
        out << "wall time   " << std::setprecision(3) << seconds << " s\n";
    }
    return correct == total ? exit_ok : exit_verification_failed;
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* flag) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string_view item(text.data() + start, end - start);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        int base = 10;
        if (item.size() > 2 && item[0] == '0' && (item[1] == 'x' || item[1] == 'X')) {
            base = 16;
            item.remove_prefix(2);
        }
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v, base);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw ValidationError(std::string(flag) + ": '" + text + "' is not a comma-separated list of integers");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

ProgramTape load_program(const std::string& program, unsigned width, unsigned rounds) {
    if (program == "chain") return chain_program(width);
    if (program == "toyhash") return toy_hash_program(width, rounds);
    std::ifstream in(program);
    if (!in) throw ValidationError("cannot read program file '" + program + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tape(buffer.str());
}

void add_run_options(CLI::App* cmd, RunOptions& o, std::string& target, std::string& seeds) {
    cmd->add_option("--target", target, "Output values to invert, comma separated");
    cmd->add_option("--seeds", seeds, "Input values; the target becomes g(seeds)");
    cmd->add_option("--convention", o.convention, "Matched oracle output: all zeros or all ones")
        ->check(CLI::IsMember({"zeros", "ones"}))
        ->capture_default_str();
    cmd->add_option("--mode", o.mode, "One parallel iteration or n sequential ones")
        ->check(CLI::IsMember({"par", "seq"}))
        ->capture_default_str();
    cmd->add_option("--precision", o.precision, "Statevector precision")
        ->check(CLI::IsMember({"double", "single"}))
        ->capture_default_str();
    cmd->add_option("--shots", o.shots, "Draw this many measurement samples");
    cmd->add_option("--seed", o.seed, "RNG seed for sampling")->capture_default_str();
    cmd->add_option("--top", o.top, "Number of solutions to list")->capture_default_str();
    cmd->add_flag("--json", o.json, "Print the report as JSON");
}

int print_suite(const SuiteReport& r, bool json, std::ostream& out) {
    if (json) {
        Json j;
        j["suite"] = r.suite;
        j["passed"] = r.passed();
        j["checks"] = Json::array();
        for (const auto& c : r.checks)
            j["checks"].push_back({{"name", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance},
                                   {"passed", c.passed}});
        out << j.dump(2) << '\n';
    } else {
        for (const auto& c : r.checks)
            out << (c.passed ? "PASS " : "FAIL ") << r.suite << ": " << c.name << "  deviation=" << c.deviation
                << "  tol=" << c.tolerance << '\n';
    }
    return r.passed() ? exit_ok : exit_verification_failed;
}

} // namespace

std::optional<std::uint64_t> parse_byte_size(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::uint64_t multiplier = 1;
    switch (std::toupper(static_cast<unsigned char>(text.back()))) {
    case 'K': multiplier = std::uint64_t{1} << 10; break;
    case 'M': multiplier = std::uint64_t{1} << 20; break;
    case 'G': multiplier = std::uint64_t{1} << 30; break;
    default: break;
    }
    if (multiplier != 1) text.remove_suffix(1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (value > UINT64_MAX / multiplier) return std::nullopt;
    return value * multiplier;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partial-oracle quantum search on a statevector simulator"};
    app.name("poracle");
    app.require_subcommand(1);

    RunOptions chain_opts, hash_opts;
    std::string chain_target, chain_seeds, hash_target, hash_seeds;

    auto* chain = app.add_subcommand("run-chain", "Invert y += x; y <<~ (0,1,3)()");
    chain->add_option("--width", chain_opts.width, "Register width")
        ->check(CLI::Range(1U, 8U))
        ->capture_default_str();
    chain->add_flag("--sweep-all", chain_opts.sweep_all, "Run every target tuple");
    add_run_options(chain, chain_opts, chain_target, chain_seeds);

    auto* hash = app.add_subcommand("run-toyhash", "Invert the toy hash on a, b, c, d, W0");
    hash->add_option("--width", hash_opts.width, "Register width")->check(CLI::Range(2U, 4U))->capture_default_str();
    hash->add_option("--rounds", hash_opts.rounds, "Number of rounds")->check(CLI::Range(0U, 64U))->capture_default_str();
    add_run_options(hash, hash_opts, hash_target, hash_seeds);

    std::vector<std::string> suites;
    std::uint64_t verify_seed = 1;
    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "Run numerical verification suites");
    verify->add_option("--suite", suites, "Suites to run (default: all)")->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();
    verify->add_flag("--json", verify_json, "Print JSON");

    std::string program = "chain", which = "recip", out_path = "-", export_target;
    unsigned export_width = 4, export_rounds = 4;
    auto* exp = app.add_subcommand("export", "Write a circuit in the portable text format");
    exp->add_option("--program", program, "chain, toyhash or a program file")->capture_default_str();
    exp->add_option("--which", which, "Circuit to write")
        ->check(CLI::IsMember({"oracle", "recip", "pipeline"}))
        ->capture_default_str();
    exp->add_option("--width", export_width, "Width for builtin programs")->capture_default_str();
    exp->add_option("--rounds", export_rounds, "Rounds for the toy hash")->capture_default_str();
    exp->add_option("--target", export_target, "Oracle target (default all zero)");
    exp->add_option("--out", out_path, "Output file, - for stdout")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (chain->parsed() || hash->parsed()) {
            const bool is_chain = chain->parsed();
            RunOptions& o = is_chain ? chain_opts : hash_opts;
            const std::string& target = is_chain ? chain_target : hash_target;
            const std::string& seeds = is_chain ? chain_seeds : hash_seeds;
            const int given = !target.empty() + !seeds.empty() + o.sweep_all;
            if (given != 1) throw ValidationError("give exactly one of --target, --seeds" +
                                                  std::string(is_chain ? ", --sweep-all" : ""));
            if (!target.empty()) o.target = parse_list(target, "--target");
            if (!seeds.empty()) o.seeds = parse_list(seeds, "--seeds");
            const ProgramTape tape = is_chain ? chain_program(o.width) : toy_hash_program(o.width, o.rounds);
            const std::string command = is_chain ? "run-chain" : "run-toyhash";
            return o.sweep_all ? run_sweep(command, tape, o, out) : run_single(command, tape, o, out);
        }
        if (verify->parsed()) {
            if (suites.empty()) suites = suite_names();
            int code = exit_ok;
            for (const auto& s : suites)
                if (print_suite(run_suite(s, verify_seed), verify_json, out) != exit_ok) code = exit_verification_failed;
            return code;
        }
        if (exp->parsed()) {
            const ProgramTape tape = load_program(program, export_width, export_rounds);
            std::vector<std::uint64_t> target(tape.registers().size(), 0);
            if (!export_target.empty()) target = parse_list(export_target, "--target");
            const FrameLayout layout = allocate_layout(tape);
            Circuit circuit;
            if (which == "oracle")
                circuit = emit_oracle_circuit(tape, layout, target).circuit;
            else if (which == "recip")
                circuit = emit_recip_circuit(tape, layout).circuit;
            else
                circuit = pipeline_circuit(tape, target);
            const std::string text = export_portable(circuit);
            if (out_path == "-") {
                out << text;
            } else {
                std::ofstream file(out_path, std::ios::binary);
                if (!file) throw ValidationError("cannot write '" + out_path + "'");
                file << text;
            }
            return exit_ok;
        }
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const ParseError& e) {
        err << "error: " << program << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SingularError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace poracle::cli
