#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padml/linalg.hpp"

using namespace padml;

namespace {

Rational Q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

RationalVector mat_apply(const RationalMatrix& a, const RationalVector& x) {
    RationalVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
    return out;
}

}  // namespace

TEST_CASE("square solve, hand cases") {
    RationalMatrix a{{Q(0), Q(1)}, {Q(1), Q(1)}};
    auto x = solve_square(a, {Q(0), Q(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Q(1));
    CHECK((*x)[1] == Q(0));

    // Repeated row: singular.
    RationalMatrix s{{Q(1), Q(1)}, {Q(1), Q(1)}};
    CHECK_FALSE(solve_square(s, {Q(0), Q(3)}).has_value());
    CHECK_FALSE(solve_square(s, {Q(0), Q(0)}).has_value());
}

TEST_CASE("square solve with rational entries") {
    RationalMatrix a{{Q(1, 2), Q(1, 3)}, {Q(1, 5), Q(2)}};
    RationalVector want{Q(3, 7), Q(-2, 9)};
    auto got = solve_square(a, mat_apply(a, want));
    REQUIRE(got.has_value());
    CHECK(*got == want);
}

TEST_CASE("random solve verified by substitution") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-9, 9);
    int solved = 0;
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + round % 4;
        RationalMatrix a(n, RationalVector(n));
        RationalVector b(n);
        for (auto& row : a)
            for (auto& v : row) v = Q(coef(rng));
        for (auto& v : b) v = Q(coef(rng));
        auto x = solve_square(a, b);
        if (!x) continue;
        ++solved;
        CHECK(mat_apply(a, *x) == b);
    }
    CHECK(solved > 200);
}

TEST_CASE("vandermonde growth stays exact") {
    // 6x6 Vandermonde in 10..15; naive elimination would blow up here
    // far more than Bareiss does, and any error shows in substitution.
    RationalMatrix a(6, RationalVector(6));
    RationalVector want(6);
    for (long i = 0; i < 6; ++i) {
        Rational x = Q(10 + i), cur = Q(1);
        for (long j = 0; j < 6; ++j) {
            a[i][j] = cur;
            cur *= x;
        }
        want[i] = Q(i - 3, 7);
    }
    auto got = solve_square(a, mat_apply(a, want));
    REQUIRE(got.has_value());
    CHECK(*got == want);
}

TEST_CASE("rank") {
    CHECK(rank({{Q(1), Q(2)}, {Q(2), Q(4)}}) == 1);
    CHECK(rank({{Q(1), Q(2)}, {Q(0), Q(1)}}) == 2);
    CHECK(rank({{Q(0), Q(0)}}) == 0);
    CHECK(rank({}) == 0);
}

TEST_CASE("nullspace basis is deterministic and annihilated") {
    RationalMatrix a{{Q(7), Q(1)}};
    auto basis = nullspace(a, 2);
    REQUIRE(basis.size() == 1);
    // Pivot in column 0, free column 1: basis vector (-1/7, 1).
    CHECK(basis[0] == RationalVector{Q(-1, 7), Q(1)});
    CHECK(mat_apply(a, basis[0]) == RationalVector{Q(0)});

    // Zero constraints: identity basis.
    auto full = nullspace({}, 3);
    REQUIRE(full.size() == 3);
    CHECK(full[0] == RationalVector{Q(1), Q(0), Q(0)});
    CHECK(full[1] == RationalVector{Q(0), Q(1), Q(0)});
    CHECK(full[2] == RationalVector{Q(0), Q(0), Q(1)});

    // Full column rank: empty basis.
    CHECK(nullspace({{Q(1), Q(0)}, {Q(0), Q(1)}}, 2).empty());
}

TEST_CASE("random nullspace vectors annihilate") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int round = 0; round < 200; ++round) {
        std::size_t rows = rng() % 3, cols = 2 + rng() % 3;
        RationalMatrix a(rows, RationalVector(cols));
        for (auto& row : a)
            for (auto& v : row) v = Q(coef(rng));
        auto basis = nullspace(a, cols);
        CHECK(basis.size() + rank(a) == cols);
        for (const auto& v : basis) {
            bool nonzero = false;
            for (const auto& c : v) nonzero = nonzero || !c.is_zero();
            CHECK(nonzero);
            for (const auto& r : mat_apply(a, v)) CHECK(r.is_zero());
        }
    }
}

TEST_CASE("coprime integer scaling") {
    auto k = to_coprime_integers({Q(-1, 7), Q(1)});
    REQUIRE(k.size() == 2);
    CHECK(k[0] == 1);
    CHECK(k[1] == -7);

    auto k2 = to_coprime_integers({Q(0), Q(-2), Q(4)});
    CHECK(k2 == std::vector<Integer>{Integer(0), Integer(1), Integer(-2)});

    CHECK_THROWS(to_coprime_integers({Q(0), Q(0)}));
}
