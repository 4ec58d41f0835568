#include <random>

#include "doctest.h"
#include "poracle/circuit.hpp"
#include "poracle/errors.hpp"
#include "poracle/portable.hpp"
#include "poracle/sim.hpp"

using namespace poracle;

namespace {

Circuit random_circuit(std::mt19937_64& rng, unsigned n, int gates) {
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        const unsigned t = static_cast<unsigned>(rng() % n);
        const unsigned ctl = static_cast<unsigned>(rng() % n);
        switch (rng() % 7) {
        case 0: c.x(t); break;
        case 1: c.h(t); break;
        case 2: c.s(t); break;
        case 3: c.sdg(t); break;
        case 4: c.z(t); break;
        case 5:
            if (ctl != t) c.swap(t, ctl);
            break;
        default:
            if (ctl != t) c.x(t, {ctl});
            else c.barrier();
        }
    }
    return c.finalize();
}

} // namespace

TEST_CASE("adjoint is an involution and inverts the unitary") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = random_circuit(rng, 4, 40);
        CHECK(adjoint(adjoint(c)) == c);
        const DenseOperator u = dense_unitary(c);
        const DenseOperator v = dense_unitary(adjoint(c));
        CHECK((v * u).max_abs_diff(DenseOperator::identity(16)) < 1e-12);
    }
}

TEST_CASE("inverse swaps S and Sdg and keeps self-inverse gates") {
    CHECK(inverse(GateApplication{GateKind::S, {0}, {1}}) == GateApplication{GateKind::Sdg, {0}, {1}});
    CHECK(inverse(GateApplication{GateKind::Sdg, {0}, {}}).kind == GateKind::S);
    CHECK(inverse(GateApplication{GateKind::H, {0}, {}}).kind == GateKind::H);
}

TEST_CASE("conjugate emits body, inner, adjoint(body)") {
    Circuit body(2);
    body.s(0).x(1, {0}).finalize();
    Circuit inner(2);
    inner.z(1).finalize();
    const Circuit c = conjugate(body, inner);
    REQUIRE(c.gate_count() == 5);
    const auto& ops = c.ops();
    CHECK(std::get<GateApplication>(ops[0]).kind == GateKind::S);
    CHECK(std::get<GateApplication>(ops[2]).kind == GateKind::Z);
    CHECK(std::get<GateApplication>(ops[3]) == GateApplication{GateKind::X, {1}, {0}});
    CHECK(std::get<GateApplication>(ops[4]).kind == GateKind::Sdg);
}

TEST_CASE("finalized circuits are immutable") {
    Circuit c(2);
    c.h(0).finalize();
    CHECK(c.finalized());
    CHECK_THROWS_AS(c.x(1), std::logic_error);
    CHECK_THROWS_AS(c.barrier(), std::logic_error);
}

TEST_CASE("gates are validated on insertion") {
    Circuit c(2);
    CHECK_THROWS_AS(c.x(2), ValidationError);
    CHECK_THROWS_AS(c.x(0, {0}), ValidationError);
    Circuit other(3);
    CHECK_THROWS_AS(c.append(other), ValidationError);
}

TEST_CASE("gate counts are keyed by control count and kind") {
    Circuit c(4);
    c.x(0).x(1, {0}).x(2, {0, 1}).x(3, {0, 1, 2}).h(1, {0}).swap(0, 1, {2}).barrier().finalize();
    const auto counts = c.gate_counts();
    CHECK(counts.at("x") == 1);
    CHECK(counts.at("cx") == 1);
    CHECK(counts.at("ccx") == 1);
    CHECK(counts.at("cccx") == 1);
    CHECK(counts.at("ch") == 1);
    CHECK(counts.at("cswap") == 1);
    CHECK(c.gate_count() == 6);
}

TEST_CASE("register layout rejects duplicates and overlaps") {
    RegisterLayout layout;
    layout.add("x", {0, 1}, RegisterRole::Index);
    CHECK_THROWS_AS(layout.add("x", {2}, RegisterRole::Index), ValidationError);
    CHECK_THROWS_AS(layout.add("y", {1, 2}, RegisterRole::Index), ValidationError);
    layout.add("carry", {2}, RegisterRole::Carry);
    CHECK(layout.find("carry")->qubits == std::vector<unsigned>{2});
    CHECK(layout.qubits_with_role(RegisterRole::Index) == std::vector<unsigned>{0, 1});
    CHECK(parse_role("phase_ancilla") == RegisterRole::PhaseAncilla);
    CHECK_FALSE(parse_role("nope").has_value());
}

TEST_CASE("register shape splits and joins flat indices") {
    RegisterShape shape{{2, 3}};
    CHECK(shape.total() == 5);
    CHECK(shape.offset(1) == 2);
    CHECK(shape.split(0b10110) == std::vector<std::uint64_t>{2, 5});
    const std::vector<std::uint64_t> values{2, 5};
    CHECK(shape.join(values) == 0b10110);
}

TEST_CASE("qubit allocator reuses released qubits") {
    QubitAllocator alloc;
    auto a = alloc.allocate(3);
    CHECK(a == std::vector<unsigned>{0, 1, 2});
    alloc.release(std::vector<unsigned>{1});
    auto b = alloc.allocate(2);
    CHECK(b == std::vector<unsigned>{1, 3});
    CHECK(alloc.high_water() == 4);
}

TEST_CASE("portable format round trips") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c(5);
        c.append(random_circuit(rng, 5, 30));
        RegisterLayout layout;
        layout.add("k", {0, 1, 2}, RegisterRole::Index);
        layout.add("carry", {3}, RegisterRole::Carry);
        layout.add("anc", {4}, RegisterRole::PhaseAncilla);
        c.set_layout(layout).finalize();
        const std::string text = export_portable(c);
        const Circuit back = parse_portable(text);
        CHECK(back == c);
        CHECK(export_portable(back) == text);
    }
}

TEST_CASE("portable text of an empty circuit is the header") {
    CHECK(export_portable(Circuit(0).finalize()) == "PORACLE-CIRCUIT 1\nqubits 0\n");
}

TEST_CASE("portable parse errors carry line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_portable(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("PORACLE-CIRCUIT 2\n") == 1);
    CHECK(line_of("PORACLE-CIRCUIT 1\nqubits x\n") == 2);
    CHECK(line_of("PORACLE-CIRCUIT 1\nqubits 2\nx 0 |\nfoo 1 |\n") == 4);
    CHECK(line_of("PORACLE-CIRCUIT 1\nqubits 2\nx 5 |\n") == 3);
    CHECK(line_of("PORACLE-CIRCUIT 1\nqubits 2\nh 0 |\nreg k index 0\n") == 4);
}
