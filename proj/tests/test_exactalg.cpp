#include <doctest.h>

#include "generators.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/intpoly.hpp"
#include "quadmod/kernels.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"
#include "quadmod/mpoly.hpp"
#include "quadmod/upoly.hpp"

using namespace quadmod;

TEST_SUITE("exactalg") {

TEST_CASE("integer polynomial products") {
    const IntPoly c = IntPoly::variable();
    CHECK(c * IntPoly{1, 1} == IntPoly{0, 1, 1});
    CHECK((IntPoly{} * IntPoly{1, 0, 0, 1}).is_zero());
    CHECK(poly_mul(IntPoly{0, 1, 1}, IntPoly{0, 1, 1}) == IntPoly{0, 0, 1, 2, 1});
    CHECK(poly_sqr(IntPoly{0, 1, 1}) == IntPoly{0, 0, 1, 2, 1});
}

TEST_CASE("exact division") {
    CHECK(poly_divrem_exact(IntPoly{0, 1, 1}, IntPoly{0, 1}) == IntPoly{1, 1});
    CHECK(poly_divrem_exact(IntPoly{0, 1, 1, 2, 1}, IntPoly{0, 1}) == IntPoly{1, 1, 2, 1});
    CHECK_THROWS_AS(poly_divrem_exact(IntPoly{1, 0, 1}, IntPoly{1, 1}), NonExactDivision);
}

TEST_CASE("gcd over Z[c]") {
    CHECK(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{-1, 1}) == IntPoly{-1, 1});
    CHECK(poly_gcd(IntPoly{0, 1}, IntPoly{1, 1}) == IntPoly{1});
    const IntPoly g3{1, 1, 2, 1};
    CHECK(derivative(g3) == IntPoly{1, 4, 3});
    CHECK(poly_gcd(g3, derivative(g3)) == IntPoly{1});
}

TEST_CASE("resultants") {
    using P = UPoly<Int>;
    CHECK(resultant(P({-1, 0, 1}), P({-1, 1})) == 0);
    CHECK(resultant(P({-2, 0, 1}), P({-3, 0, 1})) == 1);
    const std::vector<std::string> ab{"a", "b"};
    const MPoly a = MPoly::variable(ab, 0), b = MPoly::variable(ab, 1), one = MPoly::constant(1, ab);
    using Q = UPoly<MPoly>;
    // lc(f)^deg g * prod g(root of f): the root a of x - a gives a - b
    CHECK(resultant(Q({-a, one}), Q({-b, one})) == a - b);
    CHECK(resultant(P({-2, 1}), P({-5, 1})) == -3);
}

TEST_CASE("reduction mod p") {
    CHECK(mod_reduce(IntPoly{1, 1, 2, 1}, 2) == ModPoly({1, 1, 0, 1}, 2));
    CHECK(mod_reduce(IntPoly{1, 1}, 7) == ModPoly({1, 1}, 7));
    const ModPoly r = mod_reduce(IntPoly{0, 1, 7}, 7);
    CHECK(r.degree() == 1);
    CHECK(r == ModPoly::variable(7));
    CHECK(mod_reduce(IntPoly{-1, -8}, 7) == ModPoly({6, 6}, 7));
}

TEST_CASE("distinct-degree factorization") {
    auto pattern = [](std::vector<u64> c, u64 p) { return degree_multiset(ddf(ModPoly(std::move(c), p))); };
    CHECK(pattern({1, 1, 0, 1}, 2) == std::vector<int>{3});
    CHECK(pattern({1, 0, 1}, 5) == std::vector<int>{1, 1});
    CHECK(pattern({1, 0, 1}, 7) == std::vector<int>{2});
    const auto comps = ddf(ModPoly({1, 1, 0, 1}, 2));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].degree == 3);
    CHECK(comps[0].product == ModPoly({1, 1, 0, 1}, 2));
    CHECK_THROWS_AS(ddf(ModPoly({1, 2, 1}, 5)), NotSquarefree);
}

TEST_CASE("ddf agrees with the reference and multiplies back") {
    testgen::Gen g(11);
    for (u64 p : {u64{3}, u64{101}, u64{1000003}, u64{2305843009213693951}}) {
        for (int trial = 0; trial < 40; ++trial) {
            const ModPoly f = g.modpoly(static_cast<int>(g.range(1, 24)), p, true);
            if (!is_squarefree(f)) continue;
            const auto a = ddf(f);
            const auto b = ddf_reference(f);
            REQUIRE(a.size() == b.size());
            ModPoly prod = ModPoly::constant(1, p);
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].degree == b[i].degree);
                CHECK(a[i].product == b[i].product);
                prod = prod * a[i].product;
            }
            CHECK(prod == f);
        }
    }
}

TEST_CASE("random primes are deterministic") {
    const u64 a = random_prime(16, 0);
    CHECK(a == random_prime(16, 0));
    CHECK((a >> 15) == 1);
    CHECK(is_prime_u64(a));
    const u64 b = random_prime(62, 1);
    CHECK((b >> 61) == 1);
    CHECK(is_prime_u64(b, 40));
    CHECK_THROWS_AS(random_prime(8, 0), std::invalid_argument);
}

TEST_CASE("integer polynomial ring laws") {
    testgen::Gen g(21);
    for (int trial = 0; trial < 300; ++trial) {
        const IntPoly a = g.intpoly(8, 50), b = g.intpoly(8, 50), c = g.intpoly(8, 50);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(derivative(a * b) == derivative(a) * b + a * derivative(b));
        const Int x = g.range(-9, 9);
        CHECK(eval(a * b, x) == eval(a, x) * eval(b, x));
        if (!b.is_zero()) CHECK(poly_divrem_exact(a * b, b) == a);
        const IntPoly d = poly_gcd(a, b);
        if (!d.is_zero()) {
            CHECK_NOTHROW(poly_divrem_exact(a, d));
            CHECK_NOTHROW(poly_divrem_exact(b, d));
        }
    }
}

TEST_CASE("modular division and gcd laws") {
    testgen::Gen g(22);
    for (u64 p : {u64{2}, u64{65537}, u64{2305843009213693951}}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ModPoly a = g.modpoly(static_cast<int>(g.range(0, 12)), p, false);
            const ModPoly b = g.modpoly(static_cast<int>(g.range(0, 8)), p, false);
            const auto [q, r] = divrem(a, b);
            CHECK(q * b + r == a);
            CHECK((r.degree() < b.degree()));
            const ModPoly d = gcd(a, b);
            CHECK(rem(a, d).is_zero());
            CHECK(rem(b, d).is_zero());
            const ModPoly f = g.modpoly(static_cast<int>(g.range(1, 10)), p, true);
            const Int e = g.range(0, 1000000);
            CHECK(x_powmod(e, f) == powmod(ModPoly::variable(p), e, f));
        }
    }
}

TEST_CASE("multivariate exact division and gcd") {
    testgen::Gen g(23);
    const std::vector<std::string> xyz{"x", "y", "z"};
    for (int trial = 0; trial < 60; ++trial) {
        const MPoly a = g.mpoly(xyz, 5, 3, 9), b = g.mpoly(xyz, 5, 3, 9), c = g.mpoly(xyz, 4, 2, 9);
        if (b.is_zero() || c.is_zero()) continue;
        CHECK(exact_div(a * b, b) == a);
        const MPoly d = gcd(a * c, b * c);
        MPoly q(xyz);
        CHECK(try_exact_div(d, c, &q));
        CHECK(try_exact_div(a * c, d, &q));
        CHECK(try_exact_div(b * c, d, &q));
    }
}

TEST_CASE("parallel kernels match the serial reference") {
    testgen::Gen g(24);
    const u64 p = 2305843009213693951ULL;
    std::vector<u64> a(37 * 53), x(53), y1(37), y2(37);
    for (auto& v : a) v = g.below(p);
    for (auto& v : x) v = g.below(p);
    kernels::matvec_mod(a, 37, 53, x, y1, p);
    kernels::serial::matvec_mod(a, 37, 53, x, y2, p);
    CHECK(y1 == y2);
    CHECK(kernels::convolve_mod(a, x, p) == kernels::serial::convolve_mod(a, x, p));
    const ModPoly f = g.modpoly(40, 1000003, true);
    CHECK(kernels::frobenius_matrix_t(f) == kernels::serial::frobenius_matrix_t(f));
    std::vector<std::pair<u64, u64>> pts;
    for (int i = 0; i < 200; ++i) pts.emplace_back(g.below(10007), g.below(10007));
    CHECK(kernels::critical_periods(pts, 12, 10007) == kernels::serial::critical_periods(pts, 12, 10007));
}

}
