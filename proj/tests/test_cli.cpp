#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "poracle/cli.hpp"
#include "poracle/portable.hpp"

using namespace poracle;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("poracle_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

} // namespace

TEST_CASE("run-chain reports the preimage") {
    const auto r = run({"run-chain", "--width", "4", "--target", "4,1", "--json"});
    REQUIRE(r.code == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"solutions", "qubit_count", "gate_counts", "iterations", "config"})
        CHECK(j.contains(key));
    CHECK(j["solutions"][0]["values"]["x"] == 4);
    CHECK(j["solutions"][0]["values"]["y"] == 7);
    CHECK(j["solutions"][0]["probability"].get<double>() > 0.999);
    CHECK(j["qubit_count"] == 14);
    CHECK(j["iterations"] == 1);
}

TEST_CASE("run-chain from seeds and in sequential mode") {
    const auto zero = run({"run-chain", "--width", "4", "--seeds", "0,0", "--json"});
    REQUIRE(zero.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(zero.out)["solutions"][0]["values"]["y"] == 0);
    const auto seq = run({"run-chain", "--width", "3", "--seeds", "5,2", "--mode", "seq", "--json"});
    REQUIRE(seq.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(seq.out)["iterations"] == 6);
    const auto ones = run({"run-chain", "--width", "3", "--seeds", "5,2", "--convention", "ones"});
    CHECK(ones.code == cli::exit_ok);
}

TEST_CASE("machine-readable output is byte-identical across runs") {
    const std::vector<std::string> args = {"run-chain", "--width", "3", "--seeds", "1,6", "--shots", "200",
                                           "--seed", "7", "--json"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == cli::exit_ok);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["solutions"][0]["count"] == 200);
}

TEST_CASE("sweep over every chain target") {
    const auto r = run({"run-chain", "--width", "2", "--sweep-all"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.find("16/16") != std::string::npos);
}

TEST_CASE("run-toyhash") {
    const auto r = run({"run-toyhash", "--width", "2", "--seeds", "1,2,3,0,1", "--json"});
    REQUIRE(r.code == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["solutions"][0]["values"]["a"] == 1);
    CHECK(j["solutions"][0]["values"]["W0"] == 1);
    CHECK(j["config"]["rounds"] == 4);
    const auto identity = run({"run-toyhash", "--width", "2", "--seeds", "3,2,1,0,2", "--rounds", "0"});
    CHECK(identity.code == cli::exit_ok);
    CHECK(identity.out.find("target      a=3 b=2 c=1 d=0 W0=2") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"run-chain", "--width", "4"}).code == cli::exit_usage);
    CHECK(run({"run-chain", "--width", "4", "--target", "16,0"}).code == cli::exit_usage);
    CHECK(run({"run-chain", "--width", "4", "--target", "1"}).code == cli::exit_usage);
    CHECK(run({"run-chain", "--width", "9", "--target", "1,1"}).code == cli::exit_usage);
    CHECK(run({"run-toyhash", "--width", "5", "--target", "1,1,1,1,1"}).code == cli::exit_usage);
    CHECK(run({"verify", "--suite", "nope"}).code == cli::exit_usage);
    CHECK(run({"--help"}).code == cli::exit_ok);

    setenv(cli::memory_budget_env, "1K", 1);
    CHECK(run({"run-chain", "--width", "4", "--target", "4,1"}).code == cli::exit_capacity);
    setenv(cli::memory_budget_env, "lots", 1);
    CHECK(run({"run-chain", "--width", "4", "--target", "4,1"}).code == cli::exit_usage);
    unsetenv(cli::memory_budget_env);
}

TEST_CASE("byte sizes") {
    CHECK(cli::parse_byte_size("123") == 123U);
    CHECK(cli::parse_byte_size("2K") == 2048U);
    CHECK(cli::parse_byte_size("16G") == (std::uint64_t{16} << 30));
    CHECK(cli::parse_byte_size("512m") == (std::uint64_t{512} << 20));
    CHECK_FALSE(cli::parse_byte_size("").has_value());
    CHECK_FALSE(cli::parse_byte_size("G").has_value());
    CHECK_FALSE(cli::parse_byte_size("1.5G").has_value());
}

TEST_CASE("verify suites pass") {
    for (const char* suite : {"gf2", "chain-rule", "conventions", "sequential"}) {
        const auto r = run({"verify", "--suite", suite, "--seed", "3"});
        CHECK_MESSAGE(r.code == cli::exit_ok, suite);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
}

TEST_CASE("export of the builtin chain") {
    const auto recip = run({"export", "--program", "chain", "--which", "recip", "--width", "4"});
    REQUIRE(recip.code == cli::exit_ok);
    const Circuit c = parse_portable(recip.out);
    // One reciprocal adder: (w-1) rC and (w-1) rC^dagger, two triply controlled X each.
    CHECK(c.gate_counts().at("cccx") == 4 * 3);
    CHECK(c.num_qubits() == 14);

    const auto pipe = run({"export", "--program", "chain", "--which", "pipeline", "--width", "2", "--target", "1,2"});
    REQUIRE(pipe.code == cli::exit_ok);
    const Circuit p = parse_portable(pipe.out);
    for (unsigned q = 0; q < 4; ++q) CHECK(std::get<GateApplication>(p.ops()[q]).kind == GateKind::H);
    CHECK(std::get<GateApplication>(p.ops().back()).kind == GateKind::H);

    const auto again = run({"export", "--program", "chain", "--which", "recip", "--width", "4"});
    CHECK(again.out == recip.out);
}

TEST_CASE("export of program files") {
    const auto empty = temp_file("empty.tape", "# nothing\n");
    const auto r = run({"export", "--program", empty.string(), "--which", "oracle"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out == "PORACLE-CIRCUIT 1\nqubits 0\n");

    const auto bad = temp_file("bad.tape", "reg x 4\nreg y 4\ny += z\n");
    const auto e = run({"export", "--program", bad.string()});
    CHECK(e.code == cli::exit_usage);
    CHECK(e.err.find("line 3") != std::string::npos);

    const auto good = temp_file("good.tape", "reg x 2\nreg y 2\ny += x\ny <<~ (0,1,3)()\n");
    const auto out_path = std::filesystem::temp_directory_path() / "poracle_test_out.txt";
    CHECK(run({"export", "--program", good.string(), "--which", "oracle", "--out", out_path.string()}).code ==
          cli::exit_ok);
    std::ifstream in(out_path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().rfind("PORACLE-CIRCUIT 1\n", 0) == 0);
}
