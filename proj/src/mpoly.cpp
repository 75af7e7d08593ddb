#include "quadmod/mpoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "quadmod/errors.hpp"
#include "quadmod/modarith.hpp"

namespace quadmod {

namespace {

struct GrlexGreater {
    bool operator()(Mono a, Mono b) const { return grlex_greater(a, b); }
};

Mono var_mono(int var, unsigned e) { return static_cast<Mono>(e) << (48 - 16 * var); }

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_greater(a[i].m, b[j].m))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_greater(b[j].m, a[i].m)) {
            out.push_back({b[j].m, subtract ? Int(-b[j].c) : b[j].c});
            ++j;
        } else {
            Int c = subtract ? Int(a[i].c - b[j].c) : Int(a[i].c + b[j].c);
            if (sgn(c) != 0) out.push_back({a[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("MPoly: too many variables");
}

MPoly::MPoly(std::vector<std::string> vars, std::vector<Term> terms) : MPoly(std::move(vars)) {
    t_ = std::move(terms);
    canonicalize();
}

void MPoly::canonicalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return grlex_greater(a.m, b.m); });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.c) == 0; }), out.end());
    t_ = std::move(out);
}

MPoly MPoly::constant(const Int& c, std::vector<std::string> vars) {
    MPoly r(std::move(vars));
    if (sgn(c) != 0) r.t_.push_back({0, c});
    return r;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, int idx) {
    if (idx < 0 || idx >= static_cast<int>(vars.size())) throw std::invalid_argument("MPoly::variable: bad index");
    MPoly r(vars);
    r.t_.push_back({var_mono(idx, 1), 1});
    return r;
}

MPoly MPoly::monomial(const std::vector<std::string>& vars, const std::array<unsigned, kMaxVars>& e, const Int& c) {
    MPoly r(vars);
    for (int i = static_cast<int>(vars.size()); i < kMaxVars; ++i)
        if (e[i] != 0) throw std::invalid_argument("MPoly::monomial: exponent on a missing variable");
    if (sgn(c) != 0) r.t_.push_back({mono_make(e), c});
    return r;
}

int MPoly::degree(int var) const {
    if (t_.empty()) return -1;
    unsigned d = 0;
    for (const auto& t : t_) d = std::max(d, mono_exp(t.m, var));
    return static_cast<int>(d);
}

int MPoly::total_degree() const { return t_.empty() ? -1 : static_cast<int>(mono_total(t_.front().m)); }

const Int& MPoly::lc() const {
    static const Int zero = 0;
    return t_.empty() ? zero : t_.front().c;
}

Int MPoly::coeff(Mono m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, Mono x) { return grlex_greater(t.m, x); });
    return (it != t_.end() && it->m == m) ? it->c : Int(0);
}

int MPoly::var_index(const std::string& name) const {
    for (int i = 0; i < nvars(); ++i)
        if (vars_[i] == name) return i;
    return -1;
}

std::vector<std::string> common_vars(const MPoly& a, const MPoly& b) {
    if (a.vars().empty()) return b.vars();
    if (b.vars().empty() || a.vars() == b.vars()) return a.vars();
    throw std::invalid_argument("MPoly: incompatible variable lists");
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r(common_vars(a, b));
    return MPoly(r.vars(), merge(a.terms(), b.terms(), false));
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r(common_vars(a, b));
    return MPoly(r.vars(), merge(a.terms(), b.terms(), true));
}

MPoly operator-(const MPoly& a) {
    std::vector<Term> t = a.terms();
    for (auto& x : t) x.c = -x.c;
    return MPoly(a.vars(), std::move(t));
}

MPoly operator*(const Int& s, const MPoly& a) {
    if (sgn(s) == 0) return MPoly(a.vars());
    std::vector<Term> t = a.terms();
    for (auto& x : t) x.c *= s;
    return MPoly(a.vars(), std::move(t));
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    auto vars = common_vars(a, b);
    if (a.is_zero() || b.is_zero()) return MPoly(vars);
    if (a.size() == 1 || b.size() == 1) {
        const MPoly& one = a.size() == 1 ? a : b;
        const MPoly& other = a.size() == 1 ? b : a;
        const Term& s = one.terms()[0];
        std::vector<Term> t;
        t.reserve(other.size());
        for (const auto& x : other.terms()) t.push_back({x.m + s.m, x.c * s.c});
        // adding a fixed monomial preserves the order
        return MPoly(vars, std::move(t));
    }
    std::unordered_map<Mono, Int> acc;
    acc.reserve(a.size() * b.size() / 2 + 16);
    Int prod;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) {
            mpz_mul(prod.get_mpz_t(), x.c.get_mpz_t(), y.c.get_mpz_t());
            acc[x.m + y.m] += prod;
        }
    std::vector<Term> t;
    t.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) t.push_back({m, std::move(c)});
    return MPoly(vars, std::move(t));
}

MPoly pow(const MPoly& a, unsigned k) {
    MPoly r = MPoly::constant(1, a.vars());
    MPoly b = a;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool try_exact_div(const MPoly& a, const MPoly& b, MPoly* q) {
    if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero polynomial");
    auto vars = common_vars(a, b);
    std::map<Mono, Int, GrlexGreater> rem;
    for (const auto& t : a.terms()) rem.emplace(t.m, t.c);
    const Mono bm = b.lm();
    const Int& bc = b.lc();
    std::vector<Term> quo;
    Int prod;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!mono_divides(bm, it->first) || !mpz_divisible_p(it->second.get_mpz_t(), bc.get_mpz_t())) return false;
        const Mono qm = it->first - bm;
        Int qc;
        mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), bc.get_mpz_t());
        rem.erase(it);
        for (std::size_t j = 1; j < b.size(); ++j) {
            const Term& bt = b.terms()[j];
            mpz_mul(prod.get_mpz_t(), qc.get_mpz_t(), bt.c.get_mpz_t());
            auto [pos, inserted] = rem.try_emplace(qm + bt.m);
            pos->second -= prod;
            if (!inserted && sgn(pos->second) == 0) rem.erase(pos);
        }
        quo.push_back({qm, std::move(qc)});
    }
    if (q) *q = MPoly(vars, std::move(quo));
    return true;
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
    MPoly q;
    if (!try_exact_div(a, b, &q)) throw NonExactDivision("exact_div: multivariate quotient is not exact");
    return q;
}

Int content(const MPoly& a) {
    Int g = 0;
    for (const auto& t : a.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

namespace {

int main_var(const MPoly& a, const MPoly& b) {
    int v = -1;
    for (const MPoly* x : {&a, &b})
        for (int i = 0; i < x->nvars(); ++i)
            if (x->degree(i) > 0) v = std::max(v, i);
    return v;
}

MPoly int_gcd_poly(const MPoly& a, const MPoly& b, const std::vector<std::string>& vars) {
    Int g;
    mpz_gcd(g.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
    return MPoly::constant(g, vars);
}

MPoly coeff_content(const UPoly<MPoly>& u) {
    MPoly g;
    for (const auto& c : u.c) {
        g = g.is_zero() ? primitive_part(c) * MPoly::constant(content(c)) : gcd(g, c);
        if (g.is_constant() && g.lc() == 1) break;
    }
    return g;
}

Int max_norm(const MPoly& a) {
    Int m = 0;
    for (const auto& t : a.terms())
        if (abs(t.c) > m) m = abs(t.c);
    return m;
}

// Coefficientwise symmetric xi-adic expansion: the inverse of var -> xi.
MPoly adic_lift(const MPoly& h, int var, const Int& xi) {
    std::vector<Term> out;
    const Int half = xi / 2;
    for (const auto& t : h.terms()) {
        Int c = t.c, r;
        for (unsigned i = 0; sgn(c) != 0; ++i) {
            mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (sgn(r) != 0) out.push_back({t.m + var_mono(var, i), r});
            c -= r;
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
        }
    }
    return MPoly(h.vars(), std::move(out));
}

// Heuristic gcd: evaluate the main variable at a large integer, recurse, and
// rebuild by xi-adic expansion. A candidate is accepted only if it divides
// both inputs; nullopt sends the caller to the PRS.
std::optional<MPoly> heuristic_gcd(const MPoly& f0, const MPoly& g0) {
    const auto& vars = f0.vars();
    const int v = main_var(f0, g0);
    if (v < 0) return int_gcd_poly(f0, g0, vars);
    Int gcont;
    mpz_gcd(gcont.get_mpz_t(), content(f0).get_mpz_t(), content(g0).get_mpz_t());
    const MPoly f = primitive_part(f0), g = primitive_part(g0);
    const Int nf = max_norm(f), ng = max_norm(g);
    Int xi = 2 * (nf < ng ? nf : ng) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const MPoly ff = substitute(f, v, xi), gg = substitute(g, v, xi);
        if (!ff.is_zero() && !gg.is_zero()) {
            if (auto h = heuristic_gcd(ff, gg)) {
                const MPoly cand = primitive_part(adic_lift(*h, v, xi));
                MPoly q;
                if (!cand.is_zero() && try_exact_div(f, cand, &q) && try_exact_div(g, cand, &q))
                    return cand * MPoly::constant(gcont, vars);
            }
        }
        Int r;
        mpz_sqrt(r.get_mpz_t(), xi.get_mpz_t());
        mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
        xi = xi * 73794 * r / 27011;
    }
    return std::nullopt;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    const auto vars = common_vars(a, b);
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd: both arguments are zero");
    if (a.is_zero()) return primitive_part(b) * MPoly::constant(content(b));
    if (b.is_zero()) return primitive_part(a) * MPoly::constant(content(a));
    const int v = main_var(a, b);
    if (v < 0) return int_gcd_poly(a, b, vars);
    if (auto h = heuristic_gcd(MPoly(vars, a.terms()), MPoly(vars, b.terms()))) return *h;
    UPoly<MPoly> ua = to_univariate(MPoly(vars, a.terms()), v);
    UPoly<MPoly> ub = to_univariate(MPoly(vars, b.terms()), v);
    const MPoly ca = coeff_content(ua), cb = coeff_content(ub);
    const MPoly c = gcd(ca, cb);
    ua = exact_div_scalar(ua, ca);
    ub = exact_div_scalar(ub, cb);
    if (ua.degree() < ub.degree()) std::swap(ua, ub);
    while (ub.degree() > 0) {
        UPoly<MPoly> r = prem(ua, ub);
        ua = std::move(ub);
        if (r.is_zero()) {
            ub = UPoly<MPoly>{};
            break;
        }
        ub = exact_div_scalar(r, coeff_content(r));
    }
    MPoly g = ub.is_zero() ? from_univariate(exact_div_scalar(ua, coeff_content(ua)), v, vars) : MPoly::constant(1, vars);
    return primitive_part(c * g) * MPoly::constant(content(c), vars);
}

MPoly primitive_part(const MPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    if (sgn(a.lc()) < 0) g = -g;
    std::vector<Term> t = a.terms();
    for (auto& x : t) mpz_divexact(x.c.get_mpz_t(), x.c.get_mpz_t(), g.get_mpz_t());
    return MPoly(a.vars(), std::move(t));
}

MPoly substitute(const MPoly& a, int var, const Int& num, const Int& den) {
    if (a.is_zero()) return a;
    const unsigned d = static_cast<unsigned>(a.degree(var));
    std::vector<Int> np(d + 1), dp(d + 1);
    np[0] = 1;
    dp[0] = 1;
    for (unsigned i = 1; i <= d; ++i) {
        np[i] = np[i - 1] * num;
        dp[i] = dp[i - 1] * den;
    }
    std::vector<Term> t;
    t.reserve(a.size());
    for (const auto& x : a.terms()) {
        const unsigned e = mono_exp(x.m, var);
        t.push_back({x.m - var_mono(var, e), x.c * np[e] * dp[d - e]});
    }
    return MPoly(a.vars(), std::move(t));
}

MPoly strip_var_power(const MPoly& a, int var, unsigned* k) {
    if (a.is_zero()) {
        if (k) *k = 0;
        return a;
    }
    unsigned lo = ~0u;
    for (const auto& t : a.terms()) lo = std::min(lo, mono_exp(t.m, var));
    if (k) *k = lo;
    if (lo == 0) return a;
    std::vector<Term> t = a.terms();
    for (auto& x : t) x.m -= var_mono(var, lo);
    return MPoly(a.vars(), std::move(t));
}

u64 eval_mod(const MPoly& a, std::span<const u64> point, u64 p) {
    const int nv = a.nvars();
    if (static_cast<int>(point.size()) < nv) throw std::invalid_argument("eval_mod: point has too few coordinates");
    std::vector<std::vector<u64>> powers(nv);
    for (int v = 0; v < nv; ++v) {
        const int d = std::max(0, a.degree(v));
        powers[v].resize(d + 1);
        powers[v][0] = 1 % p;
        for (int e = 1; e <= d; ++e) powers[v][e] = mul_mod(powers[v][e - 1], point[v] % p, p);
    }
    u64 s = 0;
    for (const auto& t : a.terms()) {
        u64 term = mod_u64(t.c, p);
        for (int v = 0; v < nv; ++v) term = mul_mod(term, powers[v][mono_exp(t.m, v)], p);
        s = add_mod(s, term, p);
    }
    return s;
}

Int eval(const MPoly& a, std::span<const Int> point) {
    const int nv = a.nvars();
    if (static_cast<int>(point.size()) < nv) throw std::invalid_argument("eval: point has too few coordinates");
    Int s = 0, term, pw;
    for (const auto& t : a.terms()) {
        term = t.c;
        for (int v = 0; v < nv; ++v) {
            mpz_pow_ui(pw.get_mpz_t(), point[v].get_mpz_t(), mono_exp(t.m, v));
            term *= pw;
        }
        s += term;
    }
    return s;
}

MPoly remap(const MPoly& a, const std::vector<std::string>& vars) {
    std::vector<int> target(a.nvars(), -1);
    for (int i = 0; i < a.nvars(); ++i)
        for (int j = 0; j < static_cast<int>(vars.size()); ++j)
            if (a.vars()[i] == vars[j]) target[i] = j;
    std::vector<Term> t;
    t.reserve(a.size());
    for (const auto& x : a.terms()) {
        std::array<unsigned, kMaxVars> e{};
        for (int i = 0; i < a.nvars(); ++i) {
            const unsigned k = mono_exp(x.m, i);
            if (k == 0) continue;
            if (target[i] < 0) throw std::invalid_argument("remap: variable " + a.vars()[i] + " occurs but is dropped");
            e[target[i]] += k;
        }
        t.push_back({mono_make(e), x.c});
    }
    return MPoly(vars, std::move(t));
}

IntPoly to_intpoly(const MPoly& a, int var) {
    std::vector<Int> c(static_cast<std::size_t>(std::max(0, a.degree(var) + 1)));
    for (const auto& t : a.terms()) {
        const unsigned e = mono_exp(t.m, var);
        if (t.m != var_mono(var, e)) throw std::invalid_argument("to_intpoly: polynomial involves other variables");
        c[e] = t.c;
    }
    const std::string name = var < a.nvars() ? a.vars()[var] : "x";
    return IntPoly(std::move(c), name);
}

MPoly from_intpoly(const IntPoly& a, const std::vector<std::string>& vars, int var) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (sgn(a[i]) != 0) t.push_back({var_mono(var, static_cast<unsigned>(i)), a[i]});
    return MPoly(vars, std::move(t));
}

UPoly<MPoly> to_univariate(const MPoly& a, int var) {
    const int d = a.degree(var);
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(0, d + 1)));
    for (const auto& t : a.terms()) {
        const unsigned e = mono_exp(t.m, var);
        buckets[e].push_back({t.m - var_mono(var, e), t.c});
    }
    std::vector<MPoly> c;
    c.reserve(buckets.size());
    for (auto& b : buckets) c.emplace_back(a.vars(), std::move(b));
    return UPoly<MPoly>(std::move(c));
}

MPoly from_univariate(const UPoly<MPoly>& a, int var, const std::vector<std::string>& vars) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (const auto& x : a.c[i].terms()) {
            if (mono_exp(x.m, var) != 0) throw std::invalid_argument("from_univariate: coefficient involves the main variable");
            t.push_back({x.m + var_mono(var, static_cast<unsigned>(i)), x.c});
        }
    return MPoly(vars, std::move(t));
}

std::vector<IntPoly> bivariate_rows(const MPoly& a) {
    if (a.nvars() != 2) throw std::invalid_argument("bivariate_rows: need two variables");
    const int d0 = a.degree(0), d1 = a.degree(1);
    std::vector<std::vector<Int>> rows(static_cast<std::size_t>(std::max(0, d0 + 1)),
                                       std::vector<Int>(static_cast<std::size_t>(std::max(0, d1 + 1))));
    for (const auto& t : a.terms()) rows[mono_exp(t.m, 0)][mono_exp(t.m, 1)] = t.c;
    std::vector<IntPoly> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.emplace_back(std::move(r), a.vars()[1]);
    return out;
}

std::string to_string(const MPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms()) {
        Int c = t.c;
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        c = abs(c);
        bool any = false;
        if (c != 1 || t.m == 0) {
            os << c.get_str();
            any = true;
        }
        for (int v = 0; v < a.nvars(); ++v) {
            const unsigned e = mono_exp(t.m, v);
            if (e == 0) continue;
            if (any) os << "*";
            os << a.vars()[v];
            if (e > 1) os << "^" << e;
            any = true;
        }
        first = false;
    }
    return os.str();
}

}  // namespace quadmod
