#include <doctest.h>

#include <algorithm>

#include "quadmod/covers.hpp"
#include "quadmod/errors.hpp"

using namespace quadmod;
using namespace quadmod::covers;

namespace {

std::set<std::string> labels(std::string (*name)(int), int n) {
    std::set<std::string> out;
    for (int k = 1; k <= n; ++k) out.insert(name(k));
    return out;
}

std::map<std::string, std::string> to_p(std::string (*name)(int), int n) {
    std::map<std::string, std::string> out;
    for (int k = 1; k <= n; ++k) out[name(k)] = p_label(k);
    return out;
}

// Chain X1 - ... - X_{n-2} with markings (l1, l2 | ln | ... | l5 | l4, l3).
MarkedTree chain(std::string (*name)(int), int n) {
    MarkedTree t;
    std::vector<int> v;
    for (int i = 1; i <= n - 2; ++i) v.push_back(t.add_vertex("V" + std::to_string(i)));
    for (int i = 0; i + 1 < n - 2; ++i) t.add_edge(v[i], v[i + 1], "e" + std::to_string(i));
    t.mark(name(1), v.front());
    t.mark(name(2), v.front());
    t.mark(name(3), v.back());
    t.mark(name(4), v.back());
    for (int k = 5; k <= n; ++k) t.mark(name(k), v[static_cast<std::size_t>(n - k + 1)]);
    return t;
}

}  // namespace

TEST_SUITE("covers") {

TEST_CASE("shape of the boundary cover") {
    const auto c4 = build_fstar(4);
    CHECK(c4.source.vertices.size() == 5);
    CHECK(c4.target.vertices.size() == 3);
    CHECK(c4.source.edges.size() == 4);
    CHECK(c4.target.edges.size() == 2);

    const auto c5 = build_fstar(5);
    const int d1 = c5.target.vertex("D1");
    std::vector<std::string> fiber;
    for (const auto& [v, img] : c5.vertex_map)
        if (img == d1) fiber.push_back(c5.source.vertices.at(v));
    std::sort(fiber.begin(), fiber.end());
    CHECK(fiber == std::vector<std::string>{"C5", "C5'"});
    CHECK(c5.local_degree.at(c5.source.vertex("C5")) == 1);
    CHECK(c5.local_degree.at(c5.source.vertex("C5'")) == 1);
}

TEST_CASE("admissibility") {
    for (int n = 4; n <= 20; ++n) CHECK(check_admissible(build_fstar(n)).ok);

    auto moved = build_fstar(6);
    moved.marking_map["a2"] = "b4";
    const auto r1 = check_admissible(moved);
    CHECK_FALSE(r1.ok);
    CHECK(std::any_of(r1.failures.begin(), r1.failures.end(),
                      [](const std::string& f) { return f.find("marking scheme") != std::string::npos; }));

    auto thick = build_fstar(6);
    thick.local_degree[thick.source.vertex("C5")] = 2;
    const auto r2 = check_admissible(thick);
    CHECK_FALSE(r2.ok);
    CHECK(std::any_of(r2.failures.begin(), r2.failures.end(),
                      [](const std::string& f) { return f.find("fiber degree") != std::string::npos; }));
}

TEST_CASE("stabilization of both sides") {
    for (int n : {4, 5, 6, 9, 17}) {
        const auto cov = build_fstar(n);
        const auto sa = stabilize(cov.source, labels(a_label, n));
        CHECK(sa.tree.is_stable());
        CHECK(sa.tree.vertices.size() == static_cast<std::size_t>(n - 2));
        CHECK(isomorphic(sa.tree, chain(a_label, n)));
        CHECK(isomorphic(sa.tree, build_xstar(n), to_p(a_label, n)));
        const auto sb = stabilize(cov.target, labels(b_label, n));
        CHECK(isomorphic(sb.tree, chain(b_label, n)));
        CHECK(isomorphic(sb.tree, build_xstar(n), to_p(b_label, n)));
    }
    for (int n = 4; n <= 64; ++n) {
        const auto cov = build_fstar(n);
        CHECK(isomorphic(stabilize(cov.source, labels(a_label, n)).tree, build_xstar(n), to_p(a_label, n)));
    }
}

TEST_CASE("an unstable vertex is contracted") {
    MarkedTree t;
    const int u = t.add_vertex("U"), v = t.add_vertex("V");
    t.add_edge(u, v, "e");
    t.mark("x1", u);
    for (const char* l : {"x2", "x3", "x4"}) t.mark(l, v);
    const auto s = stabilize(t, {"x1", "x2", "x3", "x4"});
    REQUIRE(s.tree.vertices.size() == 1);
    CHECK(s.tree.edges.empty());
    CHECK(s.tree.marking_count(s.tree.vertices.begin()->first) == 4);
    CHECK(s.landing.at("x1") == s.landing.at("x4"));
}

TEST_CASE("stabilization does not depend on contraction order") {
    const auto cov = build_fstar(12);
    const auto keep = labels(a_label, 12);
    const std::string ref = canonical_form(stabilize(cov.source, keep).tree);
    for (u64 seed = 1; seed <= 20; ++seed) CHECK(canonical_form(stabilize(cov.source, keep, seed).tree) == ref);
}

TEST_CASE("the target chain") {
    const auto x4 = build_xstar(4);
    REQUIRE(x4.vertices.size() == 2);
    CHECK(x4.edge("gamma1") != nullptr);
    CHECK(x4.markings.at("p1") == x4.markings.at("p2"));
    CHECK(x4.markings.at("p3") == x4.markings.at("p4"));
    CHECK(x4.markings.at("p1") != x4.markings.at("p3"));

    const auto x5 = build_xstar(5);
    REQUIRE(x5.vertices.size() == 3);
    const int mid = x5.markings.at("p5");
    CHECK(x5.degree(mid) == 2);
    CHECK(x5.markings_at(mid) == std::vector<std::string>{"p5"});
}

TEST_CASE("cross-ratio") {
    CHECK(cross_ratio(PPoint::finite(1), PPoint::finite(-1), PPoint::infinity(), PPoint::finite(0)) == -1);
    CHECK(cross_ratio(PPoint::finite(0), PPoint::finite(1), PPoint::infinity(), PPoint::finite(2)) == Rat(1, 2));
    for (int n = 4; n <= 30; ++n) {
        const auto r = cross_ratio_check(build_fstar(n));
        CHECK(r.ok);
        CHECK(r.value == -1);
    }
    auto crowded = build_fstar(6);
    const int c3 = crowded.source.vertex("C3");
    crowded.source.mark("extra1", c3);
    crowded.source.mark("extra2", c3);
    crowded.source.coords[c3] = {};
    const auto bad = cross_ratio_check(crowded);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("separating edges") {
    for (int n : {4, 6, 11}) {
        CHECK(separating_edge(build_xstar(n), {"p1", "p2"}) == "gamma1");
        const auto cov = build_fstar(n);
        CHECK(separating_edge(cov.source, {"a1", "a2"}, labels(a_label, n)) == "eta" + std::to_string(n));
        CHECK(separating_edge(cov.target, {"b1", "b2"}, labels(b_label, n)) == "theta" + std::to_string(n));
    }
    CHECK_THROWS(separating_edge(build_xstar(6), {"p1", "p3"}));
}

TEST_CASE("separating edge matches the split it names") {
    const auto x = build_xstar(9);
    for (const auto& e : x.edges) {
        const auto [left, right] = edge_split(x, e.name, labels(p_label, 9));
        if (left.empty() || right.empty()) continue;
        CHECK(separating_edge(x, left) == e.name);
        CHECK(separating_edge(x, right) == e.name);
    }
}

TEST_CASE("local model") {
    for (int n : {4, 5, 10, 64}) {
        const auto m = local_model(n);
        std::vector<int> a, b;
        for (int i = 1; i <= n - 3; ++i) a.push_back(i), b.push_back(i + 1);
        CHECK(a_indices(m) == a);
        CHECK(b_indices(m) == b);
        CHECK(m.s_params.size() == static_cast<std::size_t>(n - 2));
        CHECK(m.t_params.size() == static_cast<std::size_t>(n - 3));
    }
    const auto m4 = local_model(4);
    CHECK(m4.a_pullback.size() == 1);
    CHECK(m4.a_pullback[0].s_index == 1);
    CHECK(m4.b_pullback[0].s_index == 2);
}

TEST_CASE("smoothness verdicts") {
    for (int n = 4; n <= 64; ++n) {
        const auto r = smoothness_verdict(local_model(n));
        CHECK(r.verdict == "smooth, interior-adjacent");
        CHECK(r.rank == n - 3);
        CHECK(r.kernel_dimension == 1);
    }
    CHECK(smoothness_verdict(planted_model(3, {1, 2}, {1, 2})).verdict == "not-certified");
    CHECK(smoothness_verdict(planted_model(3, {1, 1}, {2, 2})).verdict == "not-certified");
    const auto chain = smoothness_verdict(planted_model(3, {1, 1}, {2, 3}));
    CHECK(chain.rank == 2);
    CHECK(chain.kernel_dimension == 1);
}

}
