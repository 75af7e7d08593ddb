#include <doctest.h>

#include "generators.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/irred.hpp"

using namespace quadmod;

TEST_SUITE("irred") {

TEST_CASE("degree patterns") {
    const IntPoly g3{1, 1, 2, 1};
    REQUIRE(degree_pattern(g3, 2));
    CHECK(degree_pattern(g3, 2)->degrees == std::vector<int>{3});
    CHECK(degree_pattern(IntPoly{-1, 0, 1}, 7)->degrees == std::vector<int>{1, 1});
    CHECK(degree_pattern(IntPoly{0, 1, 1}, 2)->degrees == std::vector<int>{1, 1});
    CHECK_FALSE(degree_pattern(IntPoly{1, 2, 1}, 7));   // square mod every p
    CHECK_FALSE(degree_pattern(IntPoly{1, 0, 5}, 5));   // p divides the leading coefficient
}

TEST_CASE("subset sums") {
    const auto s = subset_sums({1, 2});
    CHECK(s == std::vector<bool>{true, true, true, true});
    const auto t = subset_sums({3});
    CHECK(t == std::vector<bool>{true, false, false, true});
}

TEST_CASE("rational factor scan") {
    const auto w = rational_factor_scan(IntPoly{0, 1, 1});
    REQUIRE(w);
    CHECK(w->factor.degree() == 1);
    CHECK(w->factor * w->cofactor == IntPoly{0, 1, 1});
    CHECK_FALSE(rational_factor_scan(IntPoly{1, 1, 2, 1}));
    CHECK_FALSE(rational_factor_scan(IntPoly{1, 0, 1}));
}

TEST_CASE("sieve verdicts") {
    const auto lin = sieve(IntPoly{1, 1});
    CHECK(lin.verdict == Verdict::Irreducible);
    CHECK(lin.patterns.size() == 1);

    const auto g3 = sieve(gleason(3));
    CHECK(g3.verdict == Verdict::Irreducible);

    const IntPoly red = IntPoly{1, 1} * IntPoly{7, 1, 1};
    const auto r = sieve(red);
    CHECK(r.verdict == Verdict::ReducibleWitness);
    REQUIRE(r.witness);
    CHECK(r.witness->factor * r.witness->cofactor == red);

    CHECK_THROWS_AS(sieve(IntPoly{1, 2, 1}), NotSquarefreeOverQ);
    CHECK_THROWS_AS(sieve(IntPoly{5}), std::invalid_argument);
}

TEST_CASE("a product without rational roots is never certified irreducible") {
    const IntPoly f = IntPoly{2, 0, 1} * IntPoly{3, 0, 1};
    const auto c = sieve(f, {40, 60, 5});
    CHECK(c.verdict != Verdict::Irreducible);
    for (const auto& pat : c.patterns) CHECK(subset_sums(pat.degrees)[2]);
}

TEST_CASE("sieve is deterministic in the seed") {
    const auto a = sieve(gleason(5), {100, 60, 9});
    const auto b = sieve(gleason(5), {100, 60, 9});
    REQUIRE(a.patterns.size() == b.patterns.size());
    for (std::size_t i = 0; i < a.patterns.size(); ++i) {
        CHECK(a.patterns[i].p == b.patterns[i].p);
        CHECK(a.patterns[i].degrees == b.patterns[i].degrees);
    }
}

TEST_CASE("Gleason polynomials pass the sieve") {
    for (int n = 1; n <= 7; ++n) CHECK(sieve(gleason(n)).verdict == Verdict::Irreducible);
}

TEST_CASE("planted products are never declared irreducible") {
    testgen::Gen g(31);
    for (int trial = 0; trial < 60; ++trial) {
        IntPoly a = g.intpoly(4, 6), b = g.intpoly(4, 6);
        if (a.degree() < 1 || b.degree() < 1) continue;
        const IntPoly f = a * b;
        if (!is_squarefree(f)) continue;
        CHECK(sieve(f, {30, 60, static_cast<u64>(trial)}).verdict != Verdict::Irreducible);
    }
}

}
