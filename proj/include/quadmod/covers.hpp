#pragma once

// Dual trees of stable marked genus-0 curves and degree-2 admissible covers
// between them, with the boundary point f* and its local model.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/bigint.hpp"

namespace quadmod::covers {

/// Point [x : y] of the projective line; infinity is [1 : 0].
struct PPoint {
    Int x = 0, y = 1;

    static PPoint finite(const Rat& r) { return {r.get_num(), r.get_den()}; }
    static PPoint infinity() { return {1, 0}; }
    bool operator==(const PPoint& o) const { return x * o.y == y * o.x; }
};

struct TreeEdge {
    int u = 0, v = 0;
    std::string name;
};

/// Vertex ids are stable under stabilization, so results of different
/// contraction orders can be compared id by id.
struct MarkedTree {
    std::map<int, std::string> vertices;
    std::vector<TreeEdge> edges;
    std::map<std::string, int> markings;
    /// Optional coordinates: vertex -> (marking label or edge name) -> point.
    std::map<int, std::map<std::string, PPoint>> coords;
    int next_id = 0;

    int add_vertex(std::string name);
    void add_edge(int u, int v, std::string name);
    void mark(const std::string& label, int v);

    int vertex(const std::string& name) const;  ///< -1 if absent
    const TreeEdge* edge(const std::string& name) const;
    int degree(int v) const;
    int marking_count(int v) const;
    int special_count(int v) const { return degree(v) + marking_count(v); }
    std::vector<std::string> markings_at(int v) const;
    std::vector<const TreeEdge*> edges_at(int v) const;

    bool is_tree() const;
    bool is_stable() const;
};

struct StabilizeResult {
    MarkedTree tree;
    std::map<std::string, int> landing;  ///< kept label -> vertex id
};

/// Forget markings outside keep and contract unstable vertices until none is
/// left. Without an order seed vertices are contracted in id order; with one,
/// in a pseudo-random order. Throws Unstabilizable with fewer than three kept
/// markings present.
StabilizeResult stabilize(const MarkedTree& t, const std::set<std::string>& keep,
                          std::optional<std::uint64_t> order_seed = std::nullopt);

/// Canonical string of a marked tree after renaming labels through `rename`
/// (labels missing from the map are kept). Equal strings iff isomorphic.
std::string canonical_form(const MarkedTree& t, const std::map<std::string, std::string>& rename = {});

bool isomorphic(const MarkedTree& a, const MarkedTree& b, const std::map<std::string, std::string>& rename_a = {});

/// The unique edge splitting `universe` into `part` and its complement;
/// labels outside universe are ignored (default: all markings). Throws
/// NotSeparable when no edge, or more than one, does.
std::string separating_edge(const MarkedTree& t, const std::set<std::string>& part,
                            std::optional<std::set<std::string>> universe = std::nullopt);

/// Labels of `universe` on each side of an edge: first is the side of e.u.
std::pair<std::set<std::string>, std::set<std::string>> edge_split(const MarkedTree& t, const std::string& edge,
                                                                   const std::set<std::string>& universe);

struct TreeCover {
    int n = 0;
    MarkedTree source, target;
    std::map<int, int> vertex_map;                     ///< source vertex -> target vertex
    std::map<std::string, std::string> edge_map;       ///< source edge -> target edge
    std::map<int, int> local_degree;                   ///< per source vertex, 1 or 2
    std::map<std::string, std::pair<int, int>> node_ramification;  ///< branch degrees at (edge.u, edge.v)
    std::map<std::string, std::string> marking_map;    ///< source label -> target label
    std::vector<std::string> critical_markings{"a*", "a1"};
};

/// Marking labels used by the construction.
std::string a_label(int i);        ///< a1, a2, ...
std::string a_prime_label(int i);  ///< a2', a3', ...
std::string b_label(int i);
std::string p_label(int i);

/// Expected image of each source label under the Hurwitz marking scheme.
std::map<std::string, std::string> hurwitz_marking_scheme(int n);

/// The admissible cover f* for n >= 4; throws InvalidPeriod otherwise.
TreeCover build_fstar(int n);

/// The chain X_1 ... X_{n-2} carrying p_1..p_n; throws InvalidPeriod for n < 4.
MarkedTree build_xstar(int n);

struct AdmissibilityReport {
    bool ok = false;
    std::vector<std::string> failures;  ///< violated clauses, human readable
};

AdmissibilityReport check_admissible(const TreeCover& cov);

/// (w, x; y, z) = ((w - y)(x - z)) / ((w - z)(x - y)), so (1, -1; inf, 0) = -1.
/// Throws std::invalid_argument when two points coincide.
Rat cross_ratio(const PPoint& w, const PPoint& x, const PPoint& y, const PPoint& z);

struct CrossRatioReport {
    Rat value;
    bool ok = false;                      ///< value == -1 and no other vertex has more than 3 special points
    std::vector<std::string> violations;
    std::string convention = "(w,x;y,z) = ((w-y)(x-z))/((w-z)(x-y))";
};

/// Cross-ratio of (first node, second node; a*, a1) on the source vertex
/// carrying a*. Throws MissingCoordinates when a vertex with >= 4 special
/// points lacks coordinates.
CrossRatioReport cross_ratio_check(const TreeCover& cov);

struct SParam {
    int index = 0;                           ///< 1-based
    std::pair<std::string, std::string> source_nodes;
    std::string target_node;
};

struct TParam {
    int index = 0;
    std::string node;
};

struct Pullback {
    std::string unit;   ///< alpha_i or beta_i
    int s_index = 0;
};

struct LocalModel {
    int n = 0;
    std::vector<SParam> s_params;  ///< n - 2 entries
    std::vector<TParam> t_params;  ///< n - 3 entries
    std::vector<Pullback> a_pullback;
    std::vector<Pullback> b_pullback;
};

LocalModel local_model(int n);

/// A model with prescribed pullback indices, for exercising the verdict.
LocalModel planted_model(int s_count, const std::vector<int>& a_idx, const std::vector<int>& b_idx);

std::vector<int> a_indices(const LocalModel& m);
std::vector<int> b_indices(const LocalModel& m);

struct SmoothnessReport {
    bool rank_certified = false;   ///< equation graph is a forest without loops
    int equations = 0;
    int variables = 0;
    int rank = 0;                  ///< generic rank over F_p
    int kernel_dimension = 0;
    bool interior_adjacent = false;  ///< kernel line meets no coordinate hyperplane
    std::string verdict;           ///< "smooth, interior-adjacent", "smooth, boundary-only" or "not-certified"
};

/// Equations u_i s_{a_i} - v_i s_{b_i} = 0 with unknown units u_i, v_i.
SmoothnessReport smoothness_verdict(const LocalModel& m, std::uint64_t seed = 1);

}  // namespace quadmod::covers
