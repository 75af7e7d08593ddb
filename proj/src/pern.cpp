#include "quadmod/pern.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/kernels.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"

namespace quadmod::pern {

namespace {

// elimination ring
const std::vector<std::string> kElim{"s1", "s2", "p", "q"};
constexpr int kS1 = 0, kS2 = 1, kP = 2, kQ = 3;

void check_period(int n, int max_n) {
    if (n < 1) throw InvalidPeriod("period must be positive, got " + std::to_string(n));
    if (n > max_n)
        throw ResourceLimit("period " + std::to_string(n) + " exceeds the budget (max " + std::to_string(max_n) + ")");
}

MPoly fvar(int i) { return MPoly::variable(family_vars(), i); }

RationalFunction reduce(MPoly num, MPoly den) {
    const MPoly g = gcd(num, den);
    num = exact_div(num, g);
    den = exact_div(den, g);
    if (sgn(den.lc()) < 0) {
        num = -num;
        den = -den;
    }
    return {num, den};
}

// Gamma restricted to {var fixed = x0} over F_prime, as a polynomial in the other variable.
ModPoly fiber_mod(const MPoly& gamma, int fixed, u64 x0, u64 prime) {
    const int free = 1 - fixed;
    std::vector<u64> c(static_cast<std::size_t>(std::max(0, gamma.degree(free) + 1)), 0);
    for (const auto& t : gamma.terms()) {
        const u64 v = mul_mod(mod_u64(t.c, prime), pow_mod(x0, mono_exp(t.m, fixed), prime), prime);
        c[mono_exp(t.m, free)] = add_mod(c[mono_exp(t.m, free)], v, prime);
    }
    return ModPoly::from_reduced(std::move(c), prime);
}

// P(s1(p,q), s2(p,q)) with denominators cleared.
MPoly cleared_numerator(const MPoly& P, unsigned* weight) {
    const auto& sym = multiplier_symmetrics();
    const MPoly &A1 = sym.s1.num, &B1 = sym.s1.den, &A2 = sym.s2.num, &B2 = sym.s2.den;
    const bool square = (B2 == B1 * B1);
    unsigned w = 0, w1 = 0, w2 = 0;
    for (const auto& t : P.terms()) {
        const unsigned i = mono_exp(t.m, 0), j = mono_exp(t.m, 1);
        w = std::max(w, i + 2 * j);
        w1 = std::max(w1, i);
        w2 = std::max(w2, j);
    }
    auto powers = [](const MPoly& x, unsigned k) {
        std::vector<MPoly> v{MPoly::constant(1, family_vars())};
        for (unsigned e = 1; e <= k; ++e) v.push_back(v.back() * x);
        return v;
    };
    const auto a1 = powers(A1, w1), a2 = powers(A2, w2);
    const auto b1 = powers(B1, square ? w : w1);
    const auto b2 = square ? std::vector<MPoly>{} : powers(B2, w2);
    MPoly num(family_vars());
    for (const auto& t : P.terms()) {
        const unsigned i = mono_exp(t.m, 0), j = mono_exp(t.m, 1);
        MPoly term = a1[i] * a2[j];
        term = square ? term * b1[w - i - 2 * j] : term * b1[w1 - i] * b2[w2 - j];
        num = num + t.c * term;
    }
    if (weight) *weight = square ? w : w1 + 2 * w2;
    return num;
}

// s2-coefficients of E as polynomials in s1.
std::vector<IntPoly> s1_columns(const MPoly& E) {
    std::vector<IntPoly> cols;
    const UPoly<MPoly> u = to_univariate(E, 1);
    for (const auto& c : u.c)
        if (!c.is_zero()) cols.push_back(to_intpoly(c, 0));
    return cols;
}

bool try_divide_intpoly(const IntPoly& a, const IntPoly& b, IntPoly* q) {
    try {
        *q = poly_divrem_exact(a, b);
        return true;
    } catch (const NonExactDivision&) {
        return false;
    }
}

std::mutex g_locus_mu;
std::map<int, MPoly> g_locus;

}  // namespace

const std::vector<std::string>& family_vars() {
    static const std::vector<std::string> v{"p", "q"};
    return v;
}

const std::vector<std::string>& milnor_vars() {
    static const std::vector<std::string> v{"s1", "s2"};
    return v;
}

FamilyOrbit family_orbit(int n, int max_n) {
    check_period(n, max_n);
    const MPoly p = fvar(0), q = fvar(1);
    FamilyOrbit o;
    o.N = MPoly(family_vars());
    o.D = MPoly::constant(1, family_vars());
    for (int k = 0; k < n; ++k) {
        const MPoly n2 = o.N * o.N, d2 = o.D * o.D;
        o.N = n2 + p * d2;
        o.D = n2 + q * d2;
        Int g;
        mpz_gcd(g.get_mpz_t(), content(o.N).get_mpz_t(), content(o.D).get_mpz_t());
        if (g > 1) {
            o.N = exact_div(o.N, MPoly::constant(g));
            o.D = exact_div(o.D, MPoly::constant(g));
            o.content *= g;
        }
    }
    o.n = n;
    return o;
}

MPoly exact_period_locus(int n, int max_n) {
    check_period(n, max_n);
    {
        std::lock_guard lock(g_locus_mu);
        if (auto it = g_locus.find(n); it != g_locus.end()) return it->second;
    }
    MPoly q = family_orbit(n, max_n).N;
    for (int d : proper_divisors(n)) {
        MPoly next;
        if (!try_exact_div(q, exact_period_locus(d, max_n), &next))
            throw NonExactDivision("Gamma_" + std::to_string(d) + " does not divide the period-" + std::to_string(n) +
                                   " quotient");
        q = std::move(next);
    }
    q = primitive_part(q);
    std::lock_guard lock(g_locus_mu);
    g_locus.emplace(n, q);
    return q;
}

const MultiplierSymmetrics& multiplier_symmetrics() {
    static const MultiplierSymmetrics sym = [] {
        const std::vector<std::string> v{"p", "q", "T", "z"};
        const MPoly p = MPoly::variable(v, 0), q = MPoly::variable(v, 1), T = MPoly::variable(v, 2),
                    z = MPoly::variable(v, 3);
        const MPoly F = z * z * z - z * z + q * z - p;
        const MPoly w = z * z + q;
        // f'(z) = 2 z (q - p) / (z^2 + q)^2 at a fixed point
        const MPoly G = T * w * w - Int(2) * (q - p) * z;
        const MPoly res = resultant(to_univariate(F, 3), to_univariate(G, 3));
        const MPoly fp = resultant(to_univariate(F, 3), to_univariate(w, 3));
        const MPoly den = fp * fp;
        UPoly<MPoly> chi = to_univariate(res, 2);
        chi.c.resize(4, MPoly(v));
        if (!(chi.c[3] == den)) throw InternalConsistency("multiplier polynomial is not monic after clearing");
        // s3 - s1 + 2 = 0 over the common denominator
        if (!(-chi.c[0] + chi.c[2] + Int(2) * chi.c[3]).is_zero())
            throw InternalConsistency("multiplier relation s3 = s1 - 2 fails");
        MultiplierSymmetrics out;
        const auto& fv = family_vars();
        const MPoly d = remap(den, fv);
        out.s1 = reduce(remap(-chi.c[2], fv), d);
        out.s2 = reduce(remap(chi.c[1], fv), d);
        out.s3 = reduce(remap(-chi.c[0], fv), d);
        out.fixed_point_resultant = remap(fp, fv);
        return out;
    }();
    return sym;
}

int critical_period(u64 p0, u64 q0, u64 prime, int max_steps) {
    const std::pair<u64, u64> pt{p0 % prime, q0 % prime};
    return kernels::serial::critical_periods(std::span(&pt, 1), max_steps, prime)[0];
}

std::vector<CurvePoint> sample_curve_points(const MPoly& gamma, u64 prime, int count, u64 seed) {
    const auto& sym = multiplier_symmetrics();
    std::mt19937_64 rng(seed);
    std::vector<CurvePoint> out;
    const int max_draws = 64 * std::max(count, 1) + 64;
    // fix p and solve for q unless the locus does not involve q
    const int fixed = gamma.degree(1) >= 1 ? 0 : 1;
    for (int draw = 0; draw < max_draws && static_cast<int>(out.size()) < count; ++draw) {
        const u64 x0 = rng() % prime;
        const ModPoly fib = fiber_mod(gamma, fixed, x0, prime);
        if (fib.degree() < 1) continue;
        for (u64 y0 : roots(fib, rng())) {
            const u64 p0 = fixed == 0 ? x0 : y0, q0 = fixed == 0 ? y0 : x0;
            if (q0 == 0 || q0 == p0) continue;
            const std::array<u64, 2> pt{p0, q0};
            const u64 b1 = eval_mod(sym.s1.den, pt, prime), b2 = eval_mod(sym.s2.den, pt, prime);
            if (b1 == 0 || b2 == 0) continue;
            CurvePoint c{p0, q0, 0, 0};
            c.s1 = mul_mod(eval_mod(sym.s1.num, pt, prime), inv_mod(b1, prime), prime);
            c.s2 = mul_mod(eval_mod(sym.s2.num, pt, prime), inv_mod(b2, prime), prime);
            out.push_back(c);
            if (static_cast<int>(out.size()) == count) break;
        }
    }
    return out;
}

CurveModel plane_model(int n, u64 seed, int max_n) {
    check_period(n, max_n);
    CurveModel m;
    m.n = n;
    try {
        m.gamma = exact_period_locus(n, std::max(n, kDefaultMaxOrbit));
    } catch (const NonExactDivision&) {
        // lenient quotient: remove every smaller-period locus as often as it divides
        m.used_fallback = true;
        MPoly q = family_orbit(n, std::max(n, kDefaultMaxOrbit)).N;
        for (int d : proper_divisors(n)) {
            const MPoly g = exact_period_locus(d);
            MPoly next;
            while (try_exact_div(q, g, &next)) q = std::move(next);
        }
        m.gamma = primitive_part(q);
    }

    const auto& sym = multiplier_symmetrics();
    const MPoly s1 = MPoly::variable(kElim, kS1), s2 = MPoly::variable(kElim, kS2);
    const MPoly L1 = s1 * remap(sym.s1.den, kElim) - remap(sym.s1.num, kElim);
    const MPoly L2 = s2 * remap(sym.s2.den, kElim) - remap(sym.s2.num, kElim);
    const MPoly G = remap(m.gamma, kElim);

    // p first: L1 is linear in p
    MPoly R1 = resultant(to_univariate(G, kP), to_univariate(L1, kP));
    MPoly R2 = resultant(to_univariate(L2, kP), to_univariate(L1, kP));
    // q = 0 forces p = 0 on L1, the constant map
    R1 = strip_var_power(R1, kQ, &m.q_power_r1);
    R2 = strip_var_power(R2, kQ, &m.q_power_r2);
    m.r1_q_degree = R1.degree(kQ);
    const MPoly E4 = resultant(to_univariate(R1, kQ), to_univariate(R2, kQ));
    if (E4.is_zero()) throw EliminationFailure("eliminant vanishes identically for n = " + std::to_string(n));
    const MPoly E = remap(E4, milnor_vars());

    // split off the part depending on s1 alone
    IntPoly c;
    for (const auto& col : s1_columns(E)) c = c.is_zero() ? primitive_part(col) : poly_gcd(c, col);
    const MPoly P0 = exact_div(E, from_intpoly(c, milnor_vars(), 0));

    std::vector<MPoly> candidates;
    if (!P0.is_constant()) candidates.push_back(primitive_part(P0));
    if (c.degree() > 0) {
        IntPoly rest = squarefree_part(c);
        for (const Rat& r : rational_roots(rest)) {
            IntPoly lin(std::vector<Int>{Int(-r.get_num()), r.get_den()}, "s1");
            candidates.push_back(from_intpoly(lin, milnor_vars(), 0));
            rest = poly_divrem_exact(rest, lin);
        }
        if (rest.degree() > 0) candidates.push_back(from_intpoly(rest, milnor_vars(), 0));
    }

    // smaller-period models can only enter through the fallback quotient
    if (m.used_fallback) {
        for (int d : proper_divisors(n)) {
            const MPoly Pd = plane_model(d, seed, max_n).pmodel;
            for (auto& cand : candidates) {
                MPoly next;
                while (!cand.is_constant() && try_exact_div(cand, Pd, &next)) cand = std::move(next);
            }
        }
    }

    struct Batch {
        u64 prime;
        std::vector<CurvePoint> pts;
    };
    std::vector<Batch> batches;
    PrimeStream primes(60, seed);
    for (int k = 0; k < 3; ++k) {
        const u64 pr = primes.next();
        batches.push_back({pr, sample_curve_points(m.gamma, pr, 64, seed + static_cast<u64>(k))});
    }

    MPoly P = MPoly::constant(1, milnor_vars());
    for (const auto& cand : candidates) {
        if (cand.is_constant()) continue;
        FactorVote v;
        v.factor = cand;
        for (const auto& b : batches)
            for (const auto& pt : b.pts) {
                const std::array<u64, 2> x{pt.s1, pt.s2};
                v.hits += eval_mod(cand, x, b.prime) == 0;
                ++v.samples;
            }
        v.kept = v.samples > 0 && 100L * v.hits >= 99L * v.samples;
        if (v.kept) P = P * cand;
        m.votes.push_back(std::move(v));
    }
    if (P.is_constant())
        throw EliminationFailure("no factor of the eliminant vanishes on the sampled curve points for n = " +
                                 std::to_string(n));
    m.pmodel = primitive_part(P);

    {
        const u64 pr = batches[0].prime;
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const u64 r = rng() % pr;
        MPoly fib = substitute(m.pmodel, 0, Int(static_cast<unsigned long>(r)));
        m.fiber_squarefree = is_squarefree(mod_reduce(to_intpoly(fib, 1), pr));
    }

    MPoly num = cleared_numerator(m.pmodel, &m.certificate.weight);
    m.certificate.numerator_terms = num.size();
    m.certificate.exact = !num.is_zero() && try_exact_div(num, m.gamma, nullptr);
    if (!m.certificate.exact)
        throw EliminationFailure("membership certificate fails: Gamma_" + std::to_string(n) +
                                 " does not divide the cleared numerator of the plane model");
    return m;
}

IntPoly restrict_to_per1(const MPoly& P) {
    const MPoly at2 = substitute(P, 0, Int(2));
    std::vector<Int> c(static_cast<std::size_t>(std::max(0, at2.degree(1) + 1)));
    for (const auto& t : at2.terms()) {
        const unsigned j = mono_exp(t.m, 1);
        Int f;
        mpz_ui_pow_ui(f.get_mpz_t(), 4, j);
        c[j] += t.c * f;
    }
    return IntPoly(std::move(c), "c");
}

RestrictionReport restriction_check(const CurveModel& m) {
    if (m.n < 2) throw InvalidPeriod("restriction check needs n >= 2; the period-1 curve restricts to zero");
    RestrictionReport r;
    r.restricted = restrict_to_per1(m.pmodel);
    r.gleason = gleason(m.n);
    if (r.restricted.degree() < 1) return r;
    r.radical = squarefree_part(r.restricted);
    r.ok = (r.radical == r.gleason);
    IntPoly t = primitive_part(r.restricted), next;
    while (t.degree() >= r.gleason.degree() && try_divide_intpoly(t, r.gleason, &next)) {
        t = std::move(next);
        ++r.multiplicity;
    }
    r.pure_power = t.degree() == 0;
    return r;
}

bool component_meets_per1(const CurveModel& m) { return restrict_to_per1(m.pmodel).degree() >= 1; }

std::vector<RationalPoint> rational_point_search(const MPoly& curve, long max_height) {
    const long height = max_height;
    if (height < 1) throw std::invalid_argument("rational_point_search: height must be at least 1");
    if (curve.nvars() != 2) throw std::invalid_argument("rational_point_search: need a plane curve");
    const Int H = height;
    std::vector<Rat> heads;
    for (long b = 1; b <= height; ++b)
        for (long a = -height; a <= height; ++a)
            if (std::gcd(a < 0 ? -a : a, b) == 1) heads.emplace_back(Int(a), Int(b));

    auto all_of_height = [&] {
        std::vector<Rat> v;
        for (long d = 1; d <= height; ++d)
            for (long c = -height; c <= height; ++c)
                if (std::gcd(c < 0 ? -c : c, d) == 1) v.emplace_back(Int(c), Int(d));
        return v;
    };

    const int d0 = curve.degree(0), d1 = curve.degree(1);
    // exact test: den1^d0 den2^d1 P(x, y) == 0
    auto on_curve = [&](const Rat& x, const Rat& y) {
        Int s = 0, term, pw;
        for (const auto& t : curve.terms()) {
            const unsigned i = mono_exp(t.m, 0), j = mono_exp(t.m, 1);
            term = t.c;
            mpz_pow_ui(pw.get_mpz_t(), x.get_num_mpz_t(), i);
            term *= pw;
            mpz_pow_ui(pw.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(d0) - i);
            term *= pw;
            mpz_pow_ui(pw.get_mpz_t(), y.get_num_mpz_t(), j);
            term *= pw;
            mpz_pow_ui(pw.get_mpz_t(), y.get_den_mpz_t(), static_cast<unsigned long>(d1) - j);
            term *= pw;
            s += term;
        }
        return sgn(s) == 0;
    };

    std::vector<std::vector<RationalPoint>> found(heads.size());
    const long nh = static_cast<long>(heads.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < nh; ++k) {
        const Rat& x = heads[static_cast<std::size_t>(k)];
        const IntPoly fib = to_intpoly(substitute(curve, 0, x.get_num(), x.get_den()), 1);
        std::vector<Rat> ys;
        if (fib.is_zero())
            ys = all_of_height();
        else if (fib.degree() >= 1)
            ys = rational_roots(fib);
        for (const Rat& y : ys)
            if (quadmod::height(y) <= H) found[static_cast<std::size_t>(k)].push_back({x, y});
    }

    std::vector<RationalPoint> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    for (const auto& pt : out)
        if (!on_curve(pt.s1, pt.s2)) throw InternalConsistency("rational point search emitted a point off the curve");
    std::sort(out.begin(), out.end(), [](const RationalPoint& a, const RationalPoint& b) {
        const Int ha = std::max(quadmod::height(a.s1), quadmod::height(a.s2)), hb = std::max(quadmod::height(b.s1), quadmod::height(b.s2));
        if (ha != hb) return ha < hb;
        if (a.s1 != b.s1) return a.s1 < b.s1;
        return a.s2 < b.s2;
    });
    return out;
}

}  // namespace quadmod::pern
