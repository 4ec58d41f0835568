#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "poracle/errors.hpp"
#include "poracle/gf2.hpp"

using namespace poracle;

namespace {

ShiftType random_type(std::mt19937_64& rng, unsigned w) {
    const int wi = static_cast<int>(w);
    std::vector<int> r, s;
    for (int i = 1 + static_cast<int>(rng() % 4); i > 0; --i) r.push_back(static_cast<int>(rng() % (4 * w)) - 2 * wi);
    if (w > 1)
        for (int i = static_cast<int>(rng() % 3); i > 0; --i) {
            const int c = 1 + static_cast<int>(rng() % (w - 1));
            s.push_back(rng() % 2 ? c : -c);
        }
    return ShiftType(w, r, s);
}

} // namespace

TEST_CASE("shift_apply follows the bitwise definitions") {
    std::mt19937_64 rng(1);
    for (unsigned w = 1; w <= 6; ++w)
        for (int trial = 0; trial < 30; ++trial) {
            const ShiftType mu = random_type(rng, w);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
                REQUIRE(shift_apply(mu, x) == ref::shift(w, mu.rotr, mu.shr, x));
        }
}

TEST_CASE("shift examples") {
    for (std::uint64_t x = 0; x < 16; ++x) CHECK(shift_apply(ShiftType(4, {0}), x) == x);
    CHECK(shift_apply(ShiftType(4, {0, 1, 3}), 11) == 1);
    CHECK(shift_apply(ShiftType(4, {0, 1}, {3}), 1) == 9);
}

TEST_CASE("negative rotation is a left rotation") {
    for (unsigned w = 1; w <= 6; ++w)
        for (int a = 0; a < static_cast<int>(w); ++a)
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
                const std::uint64_t rotl = ((x << a) | (x >> ((w - a) % w))) & word_mask(w);
                CHECK(shift_apply(ShiftType(w, {-a}), x) == (a == 0 ? x : rotl));
            }
}

TEST_CASE("negative shift moves bits up") {
    CHECK(shift_apply(ShiftType(4, {}, {-1}), 0b0101) == 0b1010);
    CHECK(shift_apply(ShiftType(4, {}, {-3}), 0b0011) == 0b1000);
    CHECK(shift_apply(ShiftType(4, {}, {2}), 0b1100) == 0b0011);
}

TEST_CASE("shift functions are linear") {
    std::mt19937_64 rng(2);
    for (unsigned w = 1; w <= 6; ++w) {
        const ShiftType mu = random_type(rng, w);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << w); ++y)
                REQUIRE(shift_apply(mu, x ^ y) == (shift_apply(mu, x) ^ shift_apply(mu, y)));
    }
}

TEST_CASE("complement negates every amount") {
    CHECK(complement(ShiftType(4, {0, 1}, {3})) == ShiftType(4, {0, -1}, {-3}));
    CHECK(complement(ShiftType(4, {0, 1, 3})) == ShiftType(4, {0, -1, -3}));
    const ShiftType mu(6, {2, -5, 0}, {1, -4});
    CHECK(complement(complement(mu)) == mu);
}

TEST_CASE("the complement is the transpose") {
    std::mt19937_64 rng(4);
    for (unsigned w = 1; w <= 8; ++w)
        for (int trial = 0; trial < 20; ++trial) {
            const ShiftType mu = random_type(rng, w);
            CHECK(matrix_of(complement(mu)) == matrix_of(mu).transpose());
        }
}

TEST_CASE("matrix_of builds columns from unit vectors") {
    const GF2Matrix m = matrix_of(ShiftType(4, {0, 1}, {3}));
    CHECK(m.column(0) == 9);
    CHECK(matrix_of(ShiftType(5, {0})) == GF2Matrix::identity(5));
    std::mt19937_64 rng(6);
    const ShiftType mu = random_type(rng, 7);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t x = rng() & word_mask(7);
        CHECK(matrix_of(mu).apply(x) == shift_apply(mu, x));
    }
}

TEST_CASE("inverse table of the complementary shift") {
    const auto t = invert(matrix_of(ShiftType(4, {0, -1}, {-3})));
    REQUIRE(t.has_value());
    CHECK(t->column(0) == 7);
    CHECK(t->column(1) == 9);
    CHECK(t->column(2) == 11);
    CHECK(t->column(3) == 15);
    CHECK(to_bit_string(t->column(0), 4) == "0111");
    CHECK(to_bit_string(t->column(1), 4) == "1001");
}

TEST_CASE("singular shifts have no inverse") {
    CHECK_FALSE(invert(matrix_of(ShiftType(4, {0, 1}))).has_value());
    // Three rotations on a width that is not a power of two can still be singular.
    CHECK_FALSE(invert(matrix_of(ShiftType(3, {0, 1, 2}))).has_value());
    CHECK(invert(GF2Matrix::identity(6)) == GF2Matrix::identity(6));
}

TEST_CASE("inverses round trip") {
    std::mt19937_64 rng(8);
    int found = 0;
    while (found < 200) {
        const unsigned w = 1 + static_cast<unsigned>(rng() % 6);
        const ShiftType mu = random_type(rng, w);
        const auto t = invert(matrix_of(mu));
        if (!t) continue;
        ++found;
        CHECK(*t * matrix_of(mu) == GF2Matrix::identity(w));
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) REQUIRE(t->apply(shift_apply(mu, x)) == x);
    }
}

TEST_CASE("rotation-only invertibility on power-of-two widths") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned w = 2U << (trial % 4);
        std::vector<int> r;
        std::uint64_t survivors = 0;
        for (int i = 1 + static_cast<int>(rng() % 6); i > 0; --i) {
            const int a = static_cast<int>(rng() % w);
            r.push_back(a);
            survivors ^= std::uint64_t{1} << a;
        }
        const bool odd = std::popcount(survivors) % 2 == 1;
        REQUIRE(invert(matrix_of(ShiftType(w, r))).has_value() == odd);
    }
}

TEST_CASE("shift type validation and literal syntax") {
    CHECK_THROWS_AS(ShiftType(4, {0}, {0}), ValidationError);
    CHECK_THROWS_AS(ShiftType(4, {0}, {4}), ValidationError);
    CHECK_THROWS_AS(ShiftType(4, {0}, {-4}), ValidationError);
    CHECK_THROWS_AS(ShiftType(0, {0}), ValidationError);
    CHECK(ShiftType::parse("(0,1)(3)", 4) == ShiftType(4, {0, 1}, {3}));
    CHECK(ShiftType::parse(" ( 0, -1 ) ( -3 ) ", 4) == ShiftType(4, {0, -1}, {-3}));
    CHECK(ShiftType::parse("(0,1,3)()", 4) == ShiftType(4, {0, 1, 3}));
    CHECK(ShiftType(4, {0, 1}, {3}).to_string() == "(0,1)(3)");
    CHECK(ShiftType::parse(ShiftType(8, {7, -2}, {5}).to_string(), 8) == ShiftType(8, {7, -2}, {5}));
    CHECK_THROWS_AS(ShiftType::parse("(0,1", 4), ValidationError);
    CHECK_THROWS_AS(ShiftType::parse("(0,a)()", 4), ValidationError);
    CHECK_THROWS_AS(ShiftType::parse("(0)(9)", 4), ValidationError);
}
