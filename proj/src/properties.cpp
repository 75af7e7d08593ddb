// Randomized property batteries with independent oracles.

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "quadmod/cli.hpp"
#include "quadmod/covers.hpp"
#include "quadmod/errors.hpp"
#include "quadmod/irred.hpp"
#include "quadmod/modpoly.hpp"
#include "quadmod/pern.hpp"

namespace quadmod::cli {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Int random_int(Rng& rng, int bits) {
    Int x = 0;
    for (int b = 0; b < bits; b += 32) x = (x << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
    x >>= std::max(0, ((bits + 31) / 32) * 32 - bits);
    return (rng() & 1) ? Int(-x) : x;
}

IntPoly random_intpoly(Rng& rng, int max_deg, int bits) {
    std::vector<Int> c(static_cast<std::size_t>(uniform(rng, 0, max_deg)) + 1);
    for (auto& x : c) x = random_int(rng, static_cast<int>(uniform(rng, 1, bits)));
    return IntPoly(std::move(c));
}

ModPoly random_modpoly(Rng& rng, int max_deg, u64 p) {
    std::vector<u64> c(static_cast<std::size_t>(uniform(rng, 0, max_deg)) + 1);
    for (auto& x : c) x = rng() % p;
    return ModPoly(std::move(c), p);
}

const std::vector<std::string>& mvars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}

MPoly random_mpoly(Rng& rng, int max_terms, int max_deg, int bits) {
    MPoly out(mvars());
    const long k = uniform(rng, 1, max_terms);
    for (long i = 0; i < k; ++i) {
        std::array<unsigned, kMaxVars> e{};
        for (int v = 0; v < 3; ++v) e[v] = static_cast<unsigned>(uniform(rng, 0, max_deg));
        out = out + MPoly::monomial(mvars(), e, random_int(rng, static_cast<int>(uniform(rng, 1, bits))));
    }
    return out;
}

std::string fail(const std::string& law, int trial, const std::string& detail = {}) {
    std::ostringstream os;
    os << law << " failed at trial " << trial;
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

}  // namespace

std::string check_integer_laws(int trials, u64 seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const IntPoly a = random_intpoly(rng, 8, 90), b = random_intpoly(rng, 8, 90), c = random_intpoly(rng, 6, 40);
        if ((a + b) + c != a + (b + c)) return fail("additive associativity", t);
        if (a * b != b * a) return fail("commutativity", t);
        if ((a * b) * c != a * (b * c)) return fail("multiplicative associativity", t);
        if (a * (b + c) != a * b + a * c) return fail("distributivity", t);
        if (poly_sqr(a) != a * a) return fail("squaring", t);
        if (a - a != IntPoly()) return fail("additive inverse", t);
        if (derivative(a * b) != derivative(a) * b + a * derivative(b)) return fail("product rule", t);
        const Int x = random_int(rng, 20);
        if (eval(a * b, x) != eval(a, x) * eval(b, x)) return fail("evaluation homomorphism", t);
        if (!b.is_zero() && poly_divrem_exact(a * b, b) != a) return fail("exact division", t, to_string(b));
        if (!c.is_zero() && c.degree() >= 1 && !a.is_zero() && !b.is_zero()) {
            const IntPoly g = poly_gcd(a * c, b * c);
            try {
                (void)poly_divrem_exact(g, primitive_part(c));
                (void)poly_divrem_exact(primitive_part(a * c), primitive_part(g));
            } catch (const NonExactDivision&) {
                return fail("gcd divisibility", t);
            }
        }
        if (a.degree() >= 1) {
            const Int k = content(a);
            if (k * primitive_part(a) != a && -k * primitive_part(a) != a) return fail("content factorization", t);
        }
    }
    return {};
}

std::string check_modular_laws(int trials, u64 seed) {
    Rng rng(seed);
    const std::vector<u64> primes{2, 3, 7, 65537, 1000000007ULL, 2305843009213693951ULL};
    for (int t = 0; t < trials; ++t) {
        const u64 p = primes[t % primes.size()];
        const ModPoly a = random_modpoly(rng, 10, p), b = random_modpoly(rng, 10, p), c = random_modpoly(rng, 6, p);
        if (a * b != b * a) return fail("commutativity mod p", t);
        if ((a * b) * c != a * (b * c)) return fail("associativity mod p", t);
        if (a * (b + c) != a * b + a * c) return fail("distributivity mod p", t);
        const u64 x = rng() % p;
        if (eval(a * b, x) != mul_mod(eval(a, x), eval(b, x), p)) return fail("evaluation mod p", t);
        if (b.is_zero()) continue;
        const auto [q, r] = divrem(a, b);
        if (q * b + r != a || r.degree() >= b.degree()) return fail("division with remainder", t);
        const ModPoly g = gcd(a, b);
        if (!g.is_zero() && (!rem(a, g).is_zero() || !rem(b, g).is_zero())) return fail("gcd divides", t);
        if (b.degree() >= 1) {
            const ModPoly f = make_monic(b);
            const Int e = Int(static_cast<unsigned long>(rng() % 5000));
            if (x_powmod(e, f) != powmod(ModPoly::variable(p), e, f)) return fail("x^e mod f", t);
            if (mulmod(a, c, f) != rem(a * c, f)) return fail("mulmod", t);
        }
    }
    return {};
}

std::string check_multivariate_laws(int trials, u64 seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const MPoly a = random_mpoly(rng, 5, 3, 30), b = random_mpoly(rng, 5, 3, 30), c = random_mpoly(rng, 3, 2, 10);
        if (a * b != b * a) return fail("multivariate commutativity", t);
        if ((a * b) * c != a * (b * c)) return fail("multivariate associativity", t);
        if (a * (b + c) != a * b + a * c) return fail("multivariate distributivity", t);
        const std::array<Int, 3> pt{random_int(rng, 12), random_int(rng, 12), random_int(rng, 12)};
        if (eval(a * b, pt) != eval(a, pt) * eval(b, pt)) return fail("multivariate evaluation", t);
        if (!b.is_zero() && exact_div(a * b, b) != a) return fail("multivariate exact division", t);
        if (t % 4 == 0 && !a.is_zero() && !b.is_zero() && !c.is_constant()) {
            const MPoly g = gcd(a * c, b * c);
            MPoly q;
            if (!try_exact_div(g, primitive_part(c), &q) || !try_exact_div(a * c, g, &q))
                return fail("multivariate gcd", t, to_string(c));
        }
    }
    return {};
}

std::string check_ddf_oracle(u64 seed) {
    (void)seed;  // the battery is exhaustive
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        // monic irreducibles of degree <= 3 by trial division, enough to split degree <= 6
        std::vector<ModPoly> irreducibles;
        std::vector<ModPoly> monic_by_degree[7];
        for (int d = 1; d <= 6; ++d) {
            std::vector<u64> c(d + 1, 0);
            c[d] = 1;
            for (;;) {
                monic_by_degree[d].push_back(ModPoly(c, p));
                int i = 0;
                while (i < d && ++c[i] == p) c[i++] = 0;
                if (i == d) break;
            }
        }
        for (int d = 1; d <= 3; ++d)
            for (const auto& f : monic_by_degree[d]) {
                bool irr = true;
                for (const auto& g : irreducibles)
                    if (2 * g.degree() <= d && rem(f, g).is_zero()) irr = false;
                if (irr) irreducibles.push_back(f);
            }
        for (int d = 1; d <= 6; ++d)
            for (const auto& f : monic_by_degree[d]) {
                if (!is_squarefree(f)) continue;
                std::vector<int> want;
                ModPoly rest = f;
                for (const auto& g : irreducibles) {
                    if (2 * g.degree() > rest.degree()) break;
                    if (rem(rest, g).is_zero()) {
                        want.push_back(g.degree());
                        rest = divrem(rest, g).first;
                    }
                }
                if (rest.degree() >= 1) want.push_back(rest.degree());
                std::sort(want.begin(), want.end());
                const auto comps = ddf(f);
                if (degree_multiset(comps) != want) return fail("ddf degree pattern mod " + std::to_string(p), d, to_string(f));
                if (degree_multiset(ddf_reference(f)) != want) return fail("reference ddf mod " + std::to_string(p), d, to_string(f));
                ModPoly prod = ModPoly::constant(1, p);
                for (const auto& c : comps) prod = prod * c.product;
                if (prod != f) return fail("ddf product mod " + std::to_string(p), d, to_string(f));
            }
    }
    return {};
}

namespace {

covers::MarkedTree random_tree(Rng& rng, int vertices, int labels) {
    covers::MarkedTree t;
    for (int i = 0; i < vertices; ++i) {
        const int v = t.add_vertex("V" + std::to_string(i));
        if (i > 0) t.add_edge(static_cast<int>(uniform(rng, 0, i - 1)), v, "e" + std::to_string(i));
    }
    for (int i = 0; i < labels; ++i) t.mark("m" + std::to_string(i), static_cast<int>(uniform(rng, 0, vertices - 1)));
    return t;
}

std::string edge_signature(const covers::MarkedTree& t) {
    std::vector<std::string> es;
    for (const auto& e : t.edges)
        es.push_back(std::to_string(std::min(e.u, e.v)) + "-" + std::to_string(std::max(e.u, e.v)) + ":" + e.name);
    std::sort(es.begin(), es.end());
    std::string s;
    for (const auto& e : es) s += e + ";";
    return s;
}

}  // namespace

std::string check_stabilize_confluence(int trials, u64 seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int labels = static_cast<int>(uniform(rng, 3, 60));
        const auto tree = random_tree(rng, 200, labels);
        std::set<std::string> keep;
        for (int i = 0; i < labels; ++i)
            if (i < 3 || rng() % 2) keep.insert("m" + std::to_string(i));
        const auto base = covers::stabilize(tree, keep);
        if (!base.tree.is_tree() || !base.tree.is_stable()) return fail("stabilization is a stable tree", t);
        for (int k = 0; k < 2; ++k) {
            const auto other = covers::stabilize(tree, keep, rng());
            if (other.tree.vertices != base.tree.vertices || other.landing != base.landing ||
                edge_signature(other.tree) != edge_signature(base.tree))
                return fail("stabilize confluence", t);
        }
    }
    return {};
}

std::string check_separating_edge_oracle(int trials, u64 seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int nv = static_cast<int>(uniform(rng, 2, 50));
        const int labels = static_cast<int>(uniform(rng, 2, 30));
        const auto tree = random_tree(rng, nv, labels);
        std::set<std::string> uni;
        for (const auto& [l, v] : tree.markings) uni.insert(l);
        std::set<std::string> part;
        if (rng() % 2) {
            const auto& e = tree.edges[rng() % tree.edges.size()];
            part = covers::edge_split(tree, e.name, uni).first;
        } else {
            for (const auto& l : uni)
                if (rng() % 2) part.insert(l);
        }
        if (part.empty() || part.size() == uni.size()) continue;
        // brute force: remove each edge and flood fill from one endpoint
        std::vector<std::string> hits;
        for (const auto& e : tree.edges) {
            std::set<int> side{e.u};
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& f : tree.edges) {
                    if (f.name == e.name) continue;
                    if (side.count(f.u) != side.count(f.v)) {
                        side.insert(f.u);
                        side.insert(f.v);
                        grew = true;
                    }
                }
            }
            std::set<std::string> s;
            for (const auto& [l, v] : tree.markings)
                if (side.count(v)) s.insert(l);
            std::set<std::string> c;
            std::set_difference(uni.begin(), uni.end(), s.begin(), s.end(), std::inserter(c, c.end()));
            if (s == part || c == part) hits.push_back(e.name);
        }
        try {
            const std::string got = covers::separating_edge(tree, part);
            if (hits.size() != 1 || hits[0] != got) return fail("separating edge vs brute force", t, got);
        } catch (const NotSeparable&) {
            if (hits.size() == 1) return fail("separating edge missed " + hits[0], t);
        }
    }
    return {};
}

std::string check_orbit_oracle(int points, int max_n, u64 seed) {
    Rng rng(seed);
    for (int n = 1; n <= max_n; ++n) {
        const MPoly gamma = pern::exact_period_locus(n);
        int seen = 0;
        for (int round = 0; seen < points && round < 64; ++round) {
            const u64 p = random_prime(60, rng());
            const auto pts = pern::sample_curve_points(gamma, p, points - seen, rng());
            for (const auto& pt : pts) {
                // iterate [x : y] -> [x^2 + p0 y^2 : x^2 + q0 y^2] from [0 : 1]
                u64 x = 0, y = 1;
                int period = 0;
                for (int k = 1; k <= n; ++k) {
                    const u64 xx = mul_mod(x, x, p), yy = mul_mod(y, y, p);
                    x = add_mod(xx, mul_mod(pt.p0, yy, p), p);
                    y = add_mod(xx, mul_mod(pt.q0, yy, p), p);
                    if (x == 0 && y != 0) {
                        period = k;
                        break;
                    }
                }
                if (period != n)
                    return fail("orbit oracle for n = " + std::to_string(n), seen,
                                "period " + std::to_string(period) + " at p0 = " + std::to_string(pt.p0) +
                                    ", q0 = " + std::to_string(pt.q0) + " mod " + std::to_string(p));
                ++seen;
            }
        }
        if (seen < points) return fail("orbit oracle sampling for n = " + std::to_string(n), seen, "too few points");
    }
    return {};
}

namespace {

std::vector<Int> signed_divisors(const Int& x) {
    std::vector<Int> out;
    for (const Int& d : positive_divisors(abs(x))) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

// Kronecker: a factor of degree 1 or 2 is determined by its values at -1, 0, 1.
bool kronecker_reducible(const IntPoly& f) {
    const int n = f.degree();
    if (n <= 1) return false;
    if (f[0] == 0) return true;
    for (int k = -1; k <= 1; ++k)
        if (eval(f, Int(k)) == 0) return true;
    const Int fm = eval(f, Int(-1)), f0 = eval(f, Int(0)), f1 = eval(f, Int(1));
    for (const Int& a : signed_divisors(f0))
        for (const Int& b : signed_divisors(f1)) {
            // linear candidates through (0, a), (1, b)
            const IntPoly lin(std::vector<Int>{a, b - a});
            if (lin.degree() == 1) {
                try {
                    (void)poly_divrem_exact(f, lin);
                    return true;
                } catch (const NonExactDivision&) {
                }
            }
            if (n < 4) continue;
            for (const Int& c : signed_divisors(fm)) {
                const Int s = b - c, u = b + c - 2 * a;
                if (s % 2 != 0 || u % 2 != 0) continue;
                const IntPoly quad(std::vector<Int>{a, Int(s / 2), Int(u / 2)});
                if (quad.degree() != 2) continue;
                try {
                    (void)poly_divrem_exact(f, quad);
                    return true;
                } catch (const NonExactDivision&) {
                }
            }
        }
    return false;
}

}  // namespace

std::string check_irred_soundness(int trials, u64 seed) {
    Rng rng(seed);
    int done = 0;
    for (int t = 0; done < trials && t < 50 * trials; ++t) {
        std::vector<Int> c(static_cast<std::size_t>(uniform(rng, 2, 5)));
        for (auto& x : c) x = uniform(rng, -5, 5);
        if (c.back() == 0) continue;
        const IntPoly f(std::move(c));
        if (!is_squarefree(f)) continue;
        ++done;
        const bool reducible = kronecker_reducible(f);
        const auto cert = sieve(f, {100, 60, rng()});
        if (cert.verdict == Verdict::Irreducible && reducible)
            return fail("sieve soundness", done, "declared " + to_string(f) + " irreducible");
        if (cert.verdict == Verdict::ReducibleWitness) {
            if (!reducible) return fail("witness soundness", done, to_string(f));
            if (cert.witness->factor * cert.witness->cofactor != f) return fail("witness product", done, to_string(f));
        }
    }
    return done < trials ? fail("irred soundness sampling", done, "too few squarefree inputs") : std::string{};
}

}  // namespace quadmod::cli
