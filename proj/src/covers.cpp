#include "quadmod/covers.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include "quadmod/errors.hpp"
#include "quadmod/modarith.hpp"

namespace quadmod::covers {

// ---------------------------------------------------------------- trees

int MarkedTree::add_vertex(std::string name) {
    const int id = next_id++;
    vertices.emplace(id, std::move(name));
    return id;
}

void MarkedTree::add_edge(int u, int v, std::string name) { edges.push_back({u, v, std::move(name)}); }

void MarkedTree::mark(const std::string& label, int v) { markings[label] = v; }

int MarkedTree::vertex(const std::string& name) const {
    for (const auto& [id, nm] : vertices)
        if (nm == name) return id;
    return -1;
}

const TreeEdge* MarkedTree::edge(const std::string& name) const {
    for (const auto& e : edges)
        if (e.name == name) return &e;
    return nullptr;
}

int MarkedTree::degree(int v) const {
    int d = 0;
    for (const auto& e : edges) d += (e.u == v) + (e.v == v);
    return d;
}

int MarkedTree::marking_count(int v) const {
    int m = 0;
    for (const auto& [l, w] : markings) m += (w == v);
    return m;
}

std::vector<std::string> MarkedTree::markings_at(int v) const {
    std::vector<std::string> out;
    for (const auto& [l, w] : markings)
        if (w == v) out.push_back(l);
    return out;
}

std::vector<const TreeEdge*> MarkedTree::edges_at(int v) const {
    std::vector<const TreeEdge*> out;
    for (const auto& e : edges)
        if (e.u == v || e.v == v) out.push_back(&e);
    return out;
}

namespace {

using Adj = std::map<int, std::vector<std::pair<int, const TreeEdge*>>>;

Adj adjacency(const MarkedTree& t) {
    Adj adj;
    for (const auto& [id, nm] : t.vertices) adj[id];
    for (const auto& e : t.edges) {
        adj[e.u].push_back({e.v, &e});
        adj[e.v].push_back({e.u, &e});
    }
    return adj;
}

}  // namespace

bool MarkedTree::is_tree() const {
    if (vertices.empty()) return false;
    if (edges.size() + 1 != vertices.size()) return false;
    for (const auto& e : edges)
        if (!vertices.count(e.u) || !vertices.count(e.v) || e.u == e.v) return false;
    const Adj adj = adjacency(*this);
    std::set<int> seen{vertices.begin()->first};
    std::vector<int> stack{vertices.begin()->first};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [w, e] : adj.at(v))
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen.size() == vertices.size();
}

bool MarkedTree::is_stable() const {
    std::map<int, int> special;
    for (const auto& e : edges) ++special[e.u], ++special[e.v];
    for (const auto& [l, v] : markings) ++special[v];
    for (const auto& [id, nm] : vertices)
        if (special[id] < 3) return false;
    return true;
}

// ---------------------------------------------------------------- stabilization

StabilizeResult stabilize(const MarkedTree& t, const std::set<std::string>& keep,
                          std::optional<std::uint64_t> order_seed) {
    std::map<int, std::map<int, std::string>> adj;
    std::map<int, std::vector<std::string>> marks;
    for (const auto& [id, nm] : t.vertices) adj[id], marks[id];
    for (const auto& e : t.edges) {
        adj[e.u][e.v] = e.name;
        adj[e.v][e.u] = e.name;
    }
    std::size_t kept = 0;
    for (const auto& [l, v] : t.markings)
        if (keep.count(l)) marks[v].push_back(l), ++kept;
    if (kept < 3) throw Unstabilizable("stabilize: fewer than three kept markings");

    auto unstable = [&](int v) { return adj.count(v) && adj[v].size() + marks[v].size() < 3; };

    std::mt19937_64 rng(order_seed.value_or(0));
    std::vector<int> pool;   // random order: candidates, possibly stale
    std::set<int> ordered;   // id order
    auto push = [&](int v) {
        if (!unstable(v)) return;
        if (order_seed) pool.push_back(v);
        else ordered.insert(v);
    };
    for (const auto& [id, a] : adj) push(id);

    auto pop = [&]() -> int {
        if (!order_seed) {
            if (ordered.empty()) return -1;
            const int v = *ordered.begin();
            ordered.erase(ordered.begin());
            return v;
        }
        while (!pool.empty()) {
            const std::size_t i = rng() % pool.size();
            const int v = pool[i];
            pool[i] = pool.back();
            pool.pop_back();
            if (unstable(v)) return v;
        }
        return -1;
    };

    for (int v = pop(); v != -1; v = pop()) {
        if (!unstable(v)) continue;
        auto& nb = adj[v];
        if (nb.empty()) throw Unstabilizable("stabilize: a lone component cannot be made stable");
        if (nb.size() == 1) {
            const int w = nb.begin()->first;
            for (auto& l : marks[v]) marks[w].push_back(std::move(l));
            adj[w].erase(v);
            adj.erase(v);
            marks.erase(v);
            push(w);
        } else {
            // two neighbours and no marking: splice v out of the chain
            auto it = nb.begin();
            const auto [w1, e1] = *it++;
            const auto [w2, e2] = *it;
            const std::string name = std::min(e1, e2);
            adj[w1].erase(v);
            adj[w2].erase(v);
            adj[w1][w2] = name;
            adj[w2][w1] = name;
            adj.erase(v);
            marks.erase(v);
        }
    }

    StabilizeResult out;
    MarkedTree& r = out.tree;
    r.next_id = t.next_id;
    for (const auto& [id, nb] : adj) {
        r.vertices.emplace(id, t.vertices.at(id));
        for (const auto& [w, name] : nb)
            if (id < w) r.edges.push_back({id, w, name});
        for (const auto& l : marks[id]) r.markings[l] = id;
    }
    std::sort(r.edges.begin(), r.edges.end(), [](const TreeEdge& a, const TreeEdge& b) { return a.name < b.name; });
    out.landing = r.markings;
    return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

std::string rooted_form(const Adj& adj, const std::map<int, std::vector<std::string>>& labels, int root) {
    // iterative post-order to stay safe on long chains
    std::map<int, std::string> form;
    std::vector<std::pair<int, int>> order;  // (vertex, parent)
    std::vector<std::pair<int, int>> stack{{root, -1}};
    while (!stack.empty()) {
        auto [v, parent] = stack.back();
        stack.pop_back();
        order.push_back({v, parent});
        for (const auto& [w, e] : adj.at(v))
            if (w != parent) stack.push_back({w, v});
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto [v, parent] = *it;
        std::vector<std::string> kids;
        for (const auto& [w, e] : adj.at(v))
            if (w != parent) kids.push_back(std::move(form[w]));
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        auto ls = labels.count(v) ? labels.at(v) : std::vector<std::string>{};
        std::sort(ls.begin(), ls.end());
        for (const auto& l : ls) s += l + ",";
        s += "|";
        for (const auto& k : kids) s += k;
        s += ")";
        form[v] = std::move(s);
    }
    return form[root];
}

std::vector<int> centers(const Adj& adj) {
    std::map<int, int> deg;
    std::vector<int> leaves;
    for (const auto& [v, nb] : adj) {
        deg[v] = static_cast<int>(nb.size());
        if (nb.size() <= 1) leaves.push_back(v);
    }
    std::size_t remaining = adj.size();
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : leaves) {
            --remaining;
            for (const auto& [w, e] : adj.at(v))
                if (--deg[w] == 1) next.push_back(w);
        }
        leaves = std::move(next);
    }
    return leaves;
}

}  // namespace

std::string canonical_form(const MarkedTree& t, const std::map<std::string, std::string>& rename) {
    if (!t.is_tree()) throw std::invalid_argument("canonical_form: not a tree");
    const Adj adj = adjacency(t);
    std::map<int, std::vector<std::string>> labels;
    for (const auto& [l, v] : t.markings) {
        auto it = rename.find(l);
        labels[v].push_back(it == rename.end() ? l : it->second);
    }
    std::string best;
    for (int c : centers(adj)) {
        std::string f = rooted_form(adj, labels, c);
        if (best.empty() || f < best) best = std::move(f);
    }
    return best;
}

bool isomorphic(const MarkedTree& a, const MarkedTree& b, const std::map<std::string, std::string>& rename_a) {
    return canonical_form(a, rename_a) == canonical_form(b);
}

// ---------------------------------------------------------------- separating edges

std::pair<std::set<std::string>, std::set<std::string>> edge_split(const MarkedTree& t, const std::string& edge,
                                                                   const std::set<std::string>& universe) {
    const TreeEdge* e = t.edge(edge);
    if (!e) throw std::invalid_argument("edge_split: no edge " + edge);
    const Adj adj = adjacency(t);
    std::set<int> side{e->u};
    std::vector<int> stack{e->u};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [w, f] : adj.at(v))
            if (f != e && side.insert(w).second) stack.push_back(w);
    }
    std::pair<std::set<std::string>, std::set<std::string>> out;
    for (const auto& [l, v] : t.markings)
        if (universe.count(l)) (side.count(v) ? out.first : out.second).insert(l);
    return out;
}

std::string separating_edge(const MarkedTree& t, const std::set<std::string>& part,
                            std::optional<std::set<std::string>> universe) {
    std::set<std::string> uni;
    if (universe) uni = *universe;
    else
        for (const auto& [l, v] : t.markings) uni.insert(l);
    std::map<std::string, std::size_t> index;
    for (const auto& l : uni) {
        if (!t.markings.count(l)) throw NotSeparable("separating_edge: label " + l + " is not a marking");
        index.emplace(l, index.size());
    }
    for (const auto& l : part)
        if (!index.count(l)) throw NotSeparable("separating_edge: label " + l + " outside the universe");
    if (part.empty() || part.size() == uni.size())
        throw NotSeparable("separating_edge: part or its complement is empty");
    if (!t.is_tree()) throw std::invalid_argument("separating_edge: not a tree");

    using Bits = std::vector<bool>;
    Bits want(uni.size(), false);
    for (const auto& l : part) want[index.at(l)] = true;
    Bits want_c = want;
    want_c.flip();

    const Adj adj = adjacency(t);
    std::map<int, Bits> below;
    for (const auto& [id, nm] : t.vertices) below[id] = Bits(uni.size(), false);
    for (const auto& [l, v] : t.markings)
        if (index.count(l)) below[v][index.at(l)] = true;

    const int root = t.vertices.begin()->first;
    std::vector<std::tuple<int, int, const TreeEdge*>> order;
    std::vector<std::tuple<int, int, const TreeEdge*>> stack{{root, -1, nullptr}};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        order.push_back(cur);
        const auto [v, parent, pe] = cur;
        for (const auto& [w, e] : adj.at(v))
            if (w != parent) stack.push_back({w, v, e});
    }
    std::vector<std::string> found;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto [v, parent, pe] = *it;
        if (parent < 0) continue;
        const Bits& b = below[v];
        if (b == want || b == want_c) found.push_back(pe->name);
        Bits& up = below[parent];
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i]) up[i] = true;
    }
    if (found.size() != 1)
        throw NotSeparable("separating_edge: " + std::to_string(found.size()) + " edges split the given part");
    return found.front();
}

// ---------------------------------------------------------------- f* and X*

std::string a_label(int i) { return "a" + std::to_string(i); }
std::string a_prime_label(int i) { return "a" + std::to_string(i) + "'"; }
std::string b_label(int i) { return "b" + std::to_string(i); }
std::string p_label(int i) { return "p" + std::to_string(i); }

namespace {

std::string eta(int i) { return "eta" + std::to_string(i); }
std::string eta_prime(int i) { return "eta" + std::to_string(i) + "'"; }
std::string theta(int i) { return "theta" + std::to_string(i); }
std::string gamma_edge(int i) { return "gamma" + std::to_string(i); }

void require_period(int n, const char* who) {
    if (n < 4) throw InvalidPeriod(std::string(who) + ": n must be at least 4, got " + std::to_string(n));
}

}  // namespace

std::map<std::string, std::string> hurwitz_marking_scheme(int n) {
    std::map<std::string, std::string> m;
    m["a*"] = "b*";
    m[a_label(1)] = b_label(2);
    m[a_label(n)] = m[a_prime_label(n)] = b_label(1);
    for (int i = 2; i <= n - 1; ++i) m[a_label(i)] = m[a_prime_label(i)] = b_label(i + 1);
    return m;
}

TreeCover build_fstar(int n) {
    require_period(n, "build_fstar");
    TreeCover cov;
    cov.n = n;
    MarkedTree& C = cov.source;
    MarkedTree& D = cov.target;

    const int c1 = C.add_vertex("C1");
    std::map<int, int> chain, chain_p;  // i -> vertex of C_i, C_i'
    for (int i = n; i >= 3; --i) {
        chain[i] = C.add_vertex("C" + std::to_string(i));
        chain_p[i] = C.add_vertex("C" + std::to_string(i) + "'");
    }
    C.mark("a*", c1);
    C.mark(a_label(1), c1);
    for (int i = 3; i <= n; ++i) {
        C.mark(a_label(i), chain[i]);
        C.mark(a_prime_label(i), chain_p[i]);
    }
    C.mark(a_prime_label(2), chain[3]);
    C.mark(a_label(2), chain_p[3]);
    C.add_edge(c1, chain[n], eta(n));
    C.add_edge(c1, chain_p[n], eta_prime(n));
    for (int i = n - 1; i >= 3; --i) {
        C.add_edge(chain[i + 1], chain[i], eta(i));
        C.add_edge(chain_p[i + 1], chain_p[i], eta_prime(i));
    }
    C.coords[c1] = {{eta(n), PPoint::finite(1)},
                    {eta_prime(n), PPoint::finite(-1)},
                    {"a*", PPoint::infinity()},
                    {a_label(1), PPoint::finite(0)}};

    const int d2 = D.add_vertex("D2");
    const int d1 = D.add_vertex("D1");
    std::map<int, int> dchain;  // i -> D_i for 4 <= i <= n
    for (int i = n; i >= 4; --i) dchain[i] = D.add_vertex("D" + std::to_string(i));
    D.mark("b*", d2);
    D.mark(b_label(2), d2);
    D.mark(b_label(1), d1);
    for (int i = 4; i <= n; ++i) D.mark(b_label(i), dchain[i]);
    D.mark(b_label(3), dchain[4]);
    D.add_edge(d2, d1, theta(1));
    D.add_edge(d1, dchain[n], theta(n));
    for (int j = n - 1; j >= 4; --j) D.add_edge(dchain[j + 1], dchain[j], theta(j));
    D.coords[d2] = {{theta(1), PPoint::finite(1)}, {"b*", PPoint::infinity()}, {b_label(2), PPoint::finite(0)}};

    cov.vertex_map[c1] = d2;
    cov.local_degree[c1] = 2;
    cov.vertex_map[chain[n]] = cov.vertex_map[chain_p[n]] = d1;
    for (int i = 3; i <= n - 1; ++i) cov.vertex_map[chain[i]] = cov.vertex_map[chain_p[i]] = dchain[i + 1];
    for (int i = 3; i <= n; ++i) cov.local_degree[chain[i]] = cov.local_degree[chain_p[i]] = 1;

    cov.edge_map[eta(n)] = cov.edge_map[eta_prime(n)] = theta(1);
    for (int i = 3; i <= n - 1; ++i) cov.edge_map[eta(i)] = cov.edge_map[eta_prime(i)] = theta(i + 1);
    for (const auto& e : C.edges) cov.node_ramification[e.name] = {1, 1};
    cov.marking_map = hurwitz_marking_scheme(n);
    return cov;
}

MarkedTree build_xstar(int n) {
    require_period(n, "build_xstar");
    MarkedTree X;
    std::vector<int> v(n - 1);
    for (int j = 1; j <= n - 2; ++j) v[j] = X.add_vertex("X" + std::to_string(j));
    X.mark(p_label(1), v[1]);
    X.mark(p_label(2), v[1]);
    for (int j = 2; j <= n - 3; ++j) X.mark(p_label(n + 2 - j), v[j]);
    X.mark(p_label(4), v[n - 2]);
    X.mark(p_label(3), v[n - 2]);
    for (int i = 1; i <= n - 3; ++i) X.add_edge(v[i], v[i + 1], gamma_edge(i));
    return X;
}

// ---------------------------------------------------------------- admissibility

namespace {

PPoint square(const PPoint& z) { return {z.x * z.x, z.y * z.y}; }

}  // namespace

AdmissibilityReport check_admissible(const TreeCover& cov) {
    AdmissibilityReport rep;
    auto fail = [&](std::string what) { rep.failures.push_back(std::move(what)); };
    const MarkedTree& S = cov.source;
    const MarkedTree& T = cov.target;

    if (!S.is_tree()) fail("tree: source is not a tree");
    if (!T.is_tree()) fail("tree: target is not a tree");
    if (!S.is_stable()) fail("stability: source has a component with fewer than 3 special points");
    if (!T.is_stable()) fail("stability: target has a component with fewer than 3 special points");
    for (const auto& [v, pts] : S.coords)
        for (auto i = pts.begin(); i != pts.end(); ++i)
            for (auto j = std::next(i); j != pts.end(); ++j)
                if (i->second == j->second) fail("coordinates: two special points coincide on " + S.vertices.at(v));

    for (const auto& [v, nm] : S.vertices) {
        auto it = cov.vertex_map.find(v);
        if (it == cov.vertex_map.end() || !T.vertices.count(it->second)) fail("vertex map: " + nm + " has no image");
        auto d = cov.local_degree.find(v);
        if (d == cov.local_degree.end() || (d->second != 1 && d->second != 2))
            fail("local degree: " + nm + " is not 1 or 2");
    }
    if (!rep.failures.empty()) return rep;

    std::map<int, int> fiber;
    for (const auto& [v, w] : cov.vertex_map) fiber[w] += cov.local_degree.at(v);
    for (const auto& [w, nm] : T.vertices)
        if (fiber[w] != 2) fail("fiber degree: fiber over " + nm + " has degree " + std::to_string(fiber[w]));

    for (const auto& e : S.edges) {
        auto it = cov.edge_map.find(e.name);
        const TreeEdge* te = it == cov.edge_map.end() ? nullptr : T.edge(it->second);
        if (!te) {
            fail("edge map: node " + e.name + " has no image node");
            continue;
        }
        const int fu = cov.vertex_map.at(e.u), fv = cov.vertex_map.at(e.v);
        if (!((fu == te->u && fv == te->v) || (fu == te->v && fv == te->u)))
            fail("edge map: " + e.name + " -> " + te->name + " is not compatible with the vertex map");
        auto r = cov.node_ramification.find(e.name);
        if (r == cov.node_ramification.end()) {
            fail("balancing: no branch degrees recorded at " + e.name);
            continue;
        }
        if (r->second.first != r->second.second) fail("balancing: branch degrees differ at " + e.name);
        if (r->second.first > cov.local_degree.at(e.u) || r->second.second > cov.local_degree.at(e.v))
            fail("balancing: branch degree at " + e.name + " exceeds the local degree");
    }
    if (!rep.failures.empty()) return rep;

    // over each node at the image component, the branch degrees at v add up to deg(v)
    for (const auto& [v, nm] : S.vertices) {
        const int w = cov.vertex_map.at(v);
        std::map<std::string, int> over;
        for (const TreeEdge* te : T.edges_at(w)) over[te->name] = 0;
        int ramified = 0;
        for (const TreeEdge* e : S.edges_at(v)) {
            const auto& r = cov.node_ramification.at(e->name);
            const int b = e->u == v ? r.first : r.second;
            over[cov.edge_map.at(e->name)] += b;
            ramified += (b == 2);
        }
        for (const auto& [tn, sum] : over)
            if (sum != cov.local_degree.at(v))
                fail("node fiber: branches of " + nm + " over " + tn + " have total degree " + std::to_string(sum));
        int critical = 0;
        for (const auto& l : cov.critical_markings) {
            auto it = S.markings.find(l);
            critical += (it != S.markings.end() && it->second == v);
        }
        if (cov.local_degree.at(v) == 2) {
            if (critical == 0) fail("ramification: " + nm + " has degree 2 but carries no critical marking");
            if (critical + ramified != 2) fail("ramification: " + nm + " does not have exactly two ramification points");
        } else if (ramified > 0) {
            fail("ramification: ramified node on degree-1 component " + nm);
        }
    }

    const auto scheme = hurwitz_marking_scheme(cov.n);
    for (const auto& [l, v] : S.markings) {
        auto it = cov.marking_map.find(l);
        if (it == cov.marking_map.end()) {
            fail("marking scheme: " + l + " has no image");
            continue;
        }
        auto want = scheme.find(l);
        if (want == scheme.end() || want->second != it->second)
            fail("marking scheme: " + l + " -> " + it->second + " violates the Hurwitz scheme");
        auto tv = T.markings.find(it->second);
        if (tv == T.markings.end()) fail("smooth points: image of " + l + " is not a marking of the target");
        else if (tv->second != cov.vertex_map.at(v))
            fail("smooth points: " + l + " lands on the wrong component");
    }

    // where both sides carry coordinates, a degree-2 component must be z -> z^2
    for (const auto& [v, pts] : S.coords) {
        if (cov.local_degree.at(v) != 2) continue;
        auto tc = T.coords.find(cov.vertex_map.at(v));
        if (tc == T.coords.end()) continue;
        for (const auto& [name, z] : pts) {
            auto m = cov.marking_map.find(name);
            auto e = cov.edge_map.find(name);
            const std::string image = m != cov.marking_map.end() ? m->second : e != cov.edge_map.end() ? e->second : "";
            auto iz = tc->second.find(image);
            if (iz != tc->second.end() && !(square(z) == iz->second))
                fail("coordinates: " + name + " does not map to " + image + " under z -> z^2");
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

// ---------------------------------------------------------------- cross-ratio

Rat cross_ratio(const PPoint& w, const PPoint& x, const PPoint& y, const PPoint& z) {
    auto det = [](const PPoint& a, const PPoint& b) -> Int { return a.x * b.y - b.x * a.y; };
    const Int num = det(w, y) * det(x, z);
    const Int den = det(w, z) * det(x, y);
    if (num == 0 || den == 0) throw std::invalid_argument("cross_ratio: points are not distinct");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

CrossRatioReport cross_ratio_check(const TreeCover& cov) {
    CrossRatioReport rep;
    const MarkedTree& S = cov.source;
    auto crit = S.markings.find("a*");
    if (crit == S.markings.end()) throw InvalidPeriod("cross_ratio_check: source has no marking a*");
    const int c1 = crit->second;

    auto check_tree = [&](const MarkedTree& t, int skip, const char* side) {
        for (const auto& [v, nm] : t.vertices) {
            const int k = t.special_count(v);
            if (k >= 4 && !t.coords.count(v))
                throw MissingCoordinates("cross_ratio_check: " + nm + " has " + std::to_string(k) +
                                         " special points and no coordinates");
            if (v != skip && k > 3)
                rep.violations.push_back(std::string(side) + " component " + nm + " has " + std::to_string(k) +
                                         " special points");
        }
    };
    check_tree(S, c1, "source");
    check_tree(cov.target, -1, "target");

    std::vector<std::string> order;
    for (const TreeEdge* e : S.edges_at(c1)) order.push_back(e->name);
    order.push_back("a*");
    order.push_back(a_label(1));
    if (order.size() != 4) {
        rep.violations.push_back("C1 has " + std::to_string(order.size()) + " special points, expected 4");
        return rep;
    }
    auto cc = S.coords.find(c1);
    if (cc == S.coords.end()) throw MissingCoordinates("cross_ratio_check: C1 has no coordinates");
    std::vector<PPoint> pts;
    for (const auto& name : order) {
        auto it = cc->second.find(name);
        if (it == cc->second.end()) throw MissingCoordinates("cross_ratio_check: no coordinate for " + name);
        pts.push_back(it->second);
    }
    rep.value = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    if (rep.value != -1) rep.violations.push_back("cross-ratio on C1 is " + to_decimal(rep.value) + ", expected -1");
    rep.ok = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------- local model

LocalModel local_model(int n) {
    require_period(n, "local_model");
    const TreeCover cov = build_fstar(n);
    const MarkedTree X = build_xstar(n);
    LocalModel m;
    m.n = n;
    for (int i = 1; i <= n - 2; ++i) {
        const int j = n + 1 - i;
        SParam s{i, {eta(j), eta_prime(j)}, cov.edge_map.at(eta(j))};
        // one parameter smooths three nodes only if both source nodes are unramified
        if (cov.edge_map.at(eta_prime(j)) != s.target_node || cov.node_ramification.at(eta(j)) != std::pair{1, 1} ||
            cov.node_ramification.at(eta_prime(j)) != std::pair{1, 1})
            throw InternalConsistency("local_model: nodes of s" + std::to_string(i) + " are not unramified twins");
        m.s_params.push_back(std::move(s));
    }
    std::set<std::string> uni_p, uni_a, uni_b;
    for (int k = 1; k <= n; ++k) uni_p.insert(p_label(k)), uni_a.insert(a_label(k)), uni_b.insert(b_label(k));

    for (int i = 1; i <= n - 3; ++i) {
        m.t_params.push_back({i, gamma_edge(i)});
        auto [left, right] = edge_split(X, gamma_edge(i), uni_p);
        const std::set<std::string>& part = left.count(p_label(1)) ? left : right;
        std::set<std::string> part_a, part_b;
        for (const auto& l : part) {
            const std::string k = l.substr(1);
            part_a.insert("a" + k);
            part_b.insert("b" + k);
        }
        const std::string ea = separating_edge(cov.source, part_a, uni_a);
        const std::string eb = separating_edge(cov.target, part_b, uni_b);
        int sa = 0, sb = 0;
        for (const auto& s : m.s_params) {
            if (s.source_nodes.first == ea || s.source_nodes.second == ea) sa = s.index;
            if (s.target_node == eb) sb = s.index;
        }
        if (!sa || !sb) throw InternalConsistency("local_model: separating node of gamma" + std::to_string(i) +
                                                  " carries no smoothing parameter");
        m.a_pullback.push_back({"alpha" + std::to_string(i), sa});
        m.b_pullback.push_back({"beta" + std::to_string(i), sb});
    }
    return m;
}

LocalModel planted_model(int s_count, const std::vector<int>& a_idx, const std::vector<int>& b_idx) {
    if (a_idx.size() != b_idx.size()) throw std::invalid_argument("planted_model: pattern lengths differ");
    LocalModel m;
    m.n = s_count + 2;
    for (int i = 1; i <= s_count; ++i) m.s_params.push_back({i, {}, {}});
    for (std::size_t i = 0; i < a_idx.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        m.t_params.push_back({k, gamma_edge(k)});
        m.a_pullback.push_back({"alpha" + std::to_string(k), a_idx[i]});
        m.b_pullback.push_back({"beta" + std::to_string(k), b_idx[i]});
    }
    return m;
}

std::vector<int> a_indices(const LocalModel& m) {
    std::vector<int> v;
    for (const auto& p : m.a_pullback) v.push_back(p.s_index);
    return v;
}

std::vector<int> b_indices(const LocalModel& m) {
    std::vector<int> v;
    for (const auto& p : m.b_pullback) v.push_back(p.s_index);
    return v;
}

// ---------------------------------------------------------------- smoothness

namespace {

struct Elimination {
    int rank = 0;
    std::vector<std::vector<u64>> kernel;
};

Elimination eliminate(std::vector<std::vector<u64>> a, int cols, u64 p) {
    Elimination out;
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < cols && row < static_cast<int>(a.size()); ++c) {
        int piv = row;
        while (piv < static_cast<int>(a.size()) && a[piv][c] == 0) ++piv;
        if (piv == static_cast<int>(a.size())) continue;
        std::swap(a[piv], a[row]);
        const u64 inv = inv_mod(a[row][c], p);
        for (auto& x : a[row]) x = mul_mod(x, inv, p);
        for (int r = 0; r < static_cast<int>(a.size()); ++r) {
            if (r == row || a[r][c] == 0) continue;
            const u64 f = a[r][c];
            for (int k = 0; k < cols; ++k) a[r][k] = sub_mod(a[r][k], mul_mod(f, a[row][k], p), p);
        }
        pivot_col.push_back(c);
        ++row;
    }
    out.rank = row;
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (int r = 0; r < row; ++r) v[pivot_col[r]] = neg_mod(a[r][f], p);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

}  // namespace

SmoothnessReport smoothness_verdict(const LocalModel& m, std::uint64_t seed) {
    SmoothnessReport rep;
    const int k = static_cast<int>(m.s_params.size());
    const int eqs = static_cast<int>(m.a_pullback.size());
    rep.equations = eqs;
    rep.variables = k;

    bool well_formed = m.b_pullback.size() == m.a_pullback.size();
    for (int i = 0; well_formed && i < eqs; ++i) {
        const int a = m.a_pullback[i].s_index, b = m.b_pullback[i].s_index;
        well_formed = a >= 1 && a <= k && b >= 1 && b <= k;
    }
    if (!well_formed) {
        rep.verdict = "not-certified";
        return rep;
    }

    // a forest pattern without loops makes the rows independent for every choice of units
    std::vector<int> parent(k + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    rep.rank_certified = true;
    for (int i = 0; i < eqs; ++i) {
        const int a = find(m.a_pullback[i].s_index), b = find(m.b_pullback[i].s_index);
        if (a == b) {
            rep.rank_certified = false;
            break;
        }
        parent[a] = b;
    }

    // kernel at generic units, sampled over a large prime field
    constexpr u64 p = 2305843009213693951ULL;  // 2^61 - 1
    std::mt19937_64 rng(seed);
    bool interior = true;
    int kernel_dim = -1;
    for (int draw = 0; draw < 3; ++draw) {
        std::vector<std::vector<u64>> a(eqs, std::vector<u64>(k, 0));
        for (int i = 0; i < eqs; ++i) {
            const u64 u = 1 + rng() % (p - 1), v = 1 + rng() % (p - 1);
            auto& row = a[i];
            row[m.a_pullback[i].s_index - 1] = add_mod(row[m.a_pullback[i].s_index - 1], u, p);
            row[m.b_pullback[i].s_index - 1] = sub_mod(row[m.b_pullback[i].s_index - 1], v, p);
        }
        const Elimination el = eliminate(std::move(a), k, p);
        rep.rank = std::max(rep.rank, el.rank);
        const int dim = k - el.rank;
        kernel_dim = kernel_dim < 0 ? dim : std::min(kernel_dim, dim);
        if (el.kernel.size() != 1) interior = false;
        else
            for (u64 x : el.kernel.front()) interior = interior && x != 0;
    }
    rep.kernel_dimension = kernel_dim;
    rep.interior_adjacent = interior && kernel_dim == 1;

    if (rep.rank_certified && rep.rank == eqs && rep.kernel_dimension == 1)
        rep.verdict = rep.interior_adjacent ? "smooth, interior-adjacent" : "smooth, boundary-only";
    else
        rep.verdict = "not-certified";
    return rep;
}

}  // namespace quadmod::covers
