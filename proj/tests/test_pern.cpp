#include <doctest.h>

#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/pern.hpp"

using namespace quadmod;
using namespace quadmod::pern;

namespace {

MPoly pq(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
    MPoly out(family_vars());
    for (auto [i, j, c] : terms) out = out + MPoly::monomial(family_vars(), {i, j, 0, 0}, Int(c));
    return out;
}

const CurveModel& model(int n) {
    static std::map<int, CurveModel> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, plane_model(n)).first;
    return it->second;
}

}  // namespace

TEST_SUITE("pern") {

TEST_CASE("family orbit") {
    const auto o1 = family_orbit(1);
    CHECK(o1.N == pq({{1, 0, 1}}));
    CHECK(o1.D == pq({{0, 1, 1}}));
    const auto o2 = family_orbit(2);
    CHECK(o2.N == pq({{2, 0, 1}, {1, 2, 1}}));
    CHECK(o2.D == pq({{2, 0, 1}, {0, 3, 1}}));
}

TEST_CASE("exact period loci") {
    CHECK(exact_period_locus(1) == pq({{1, 0, 1}}));
    CHECK(exact_period_locus(2) == pq({{1, 0, 1}, {0, 2, 1}}));
}

TEST_CASE("period-3 locus vanishes at sampled period-3 maps") {
    const MPoly g3 = exact_period_locus(3);
    const u64 prime = 1000003;
    const auto pts = sample_curve_points(g3, prime, 8, 3);
    CHECK_FALSE(pts.empty());
    for (const auto& pt : pts) {
        const u64 at[] = {pt.p0, pt.q0};
        CHECK(eval_mod(g3, at, prime) == 0);
        CHECK(critical_period(pt.p0, pt.q0, prime, 10) == 3);
    }
}

TEST_CASE("loci multiply back to the orbit numerator") {
    for (int n = 1; n <= 5; ++n) {
        MPoly prod = MPoly::constant(1, family_vars());
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * exact_period_locus(d);
        CHECK(primitive_part(prod) == primitive_part(family_orbit(n).N));
    }
}

TEST_CASE("multiplier symmetrics") {
    const auto& m = multiplier_symmetrics();
    auto at_p0 = [](const RationalFunction& f) {
        return std::pair{substitute(f.num, 0, 0), substitute(f.den, 0, 0)};
    };
    const auto [s3n, s3d] = at_p0(m.s3);
    CHECK(s3n.is_zero());
    CHECK_FALSE(s3d.is_zero());
    const auto [s1n, s1d] = at_p0(m.s1);
    CHECK(s1n == Int(2) * s1d);
    // s3 - s1 + 2 = 0 after clearing denominators
    const MPoly lhs = m.s3.num * m.s1.den - m.s1.num * m.s3.den + Int(2) * m.s1.den * m.s3.den;
    CHECK(lhs.is_zero());
}

TEST_CASE("plane model for period 1 is the line s1 = 2") {
    const auto& m = model(1);
    MPoly expect = MPoly::variable(milnor_vars(), 0) - MPoly::constant(2, milnor_vars());
    CHECK(m.pmodel == expect);
}

TEST_CASE("restriction to Per_1(0)") {
    CHECK_THROWS_AS(restriction_check(model(1)), InvalidPeriod);
    for (int n = 2; n <= 4; ++n) {
        const auto& m = model(n);
        CHECK(m.certificate.exact);
        const auto r = restriction_check(m);
        CHECK(r.ok);
        CHECK(r.radical == primitive_part(gleason(n)).with_var(r.radical.var()));
        CHECK(component_meets_per1(m));
    }
}

TEST_CASE("rational points") {
    const auto pts = rational_point_search(model(1).pmodel, 2);
    CHECK(pts.size() == 7);
    for (const auto& pt : pts) {
        CHECK(pt.s1 == 2);
        CHECK(height(pt.s2) <= 2);
    }
    const std::vector<std::string> xy{"x", "y"};
    const MPoly x = MPoly::variable(xy, 0), y = MPoly::variable(xy, 1);
    CHECK(rational_point_search(x * x + y * y + MPoly::constant(1, xy), 6).empty());
    const auto p3 = rational_point_search(model(3).pmodel, 8);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].s1 == -6);
    CHECK(p3[0].s2 == 8);
}

TEST_CASE("model budget") {
    CHECK_THROWS_AS(plane_model(6), ResourceLimit);
}

}
