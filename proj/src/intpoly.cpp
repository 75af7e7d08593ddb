#include "quadmod/intpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "quadmod/errors.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"

namespace quadmod {

namespace {

constexpr std::size_t kKaratsubaThreshold = 64;

const Int& zero_int() {
    static const Int z = 0;
    return z;
}

using Vec = std::vector<Int>;

void add_into(Vec& out, std::size_t shift, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out[shift + i] += v[i];
}

Vec mul_school(const Int* a, std::size_t na, const Int* b, std::size_t nb) {
    Vec out(na + nb - 1);
    for (std::size_t i = 0; i < na; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return out;
}

Vec sqr_school(const Int* a, std::size_t n) {
    Vec out(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = i + 1; j < n; ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), a[j].get_mpz_t());
    }
    for (auto& x : out) x *= 2;
    for (std::size_t i = 0; i < n; ++i) mpz_addmul(out[2 * i].get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
    return out;
}

Vec kara_mul(const Int* a, std::size_t na, const Int* b, std::size_t nb);

Vec kara_balanced(const Int* a, const Int* b, std::size_t n) {
    if (n < kKaratsubaThreshold) return mul_school(a, n, b, n);
    const std::size_t m = n / 2;
    const std::size_t h = n - m;
    Vec z0 = kara_balanced(a, b, m);
    Vec z2 = kara_balanced(a + m, b + m, h);
    Vec sa(a + m, a + n), sb(b + m, b + n);
    for (std::size_t i = 0; i < m; ++i) {
        sa[i] += a[i];
        sb[i] += b[i];
    }
    Vec z1 = kara_balanced(sa.data(), sb.data(), h);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
    Vec out(2 * n - 1);
    add_into(out, 0, z0);
    add_into(out, m, z1);
    add_into(out, 2 * m, z2);
    return out;
}

Vec kara_sqr(const Int* a, std::size_t n) {
    if (n < kKaratsubaThreshold) return sqr_school(a, n);
    const std::size_t m = n / 2;
    const std::size_t h = n - m;
    Vec z0 = kara_sqr(a, m);
    Vec z2 = kara_sqr(a + m, h);
    Vec sa(a + m, a + n);
    for (std::size_t i = 0; i < m; ++i) sa[i] += a[i];
    Vec z1 = kara_sqr(sa.data(), h);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
    Vec out(2 * n - 1);
    add_into(out, 0, z0);
    add_into(out, m, z1);
    add_into(out, 2 * m, z2);
    return out;
}

Vec kara_mul(const Int* a, std::size_t na, const Int* b, std::size_t nb) {
    if (na == 0 || nb == 0) return {};
    if (na < nb) {
        std::swap(a, b);
        std::swap(na, nb);
    }
    if (nb < kKaratsubaThreshold) return mul_school(a, na, b, nb);
    if (na == nb) return kara_balanced(a, b, na);
    // unbalanced: slice the longer operand into blocks of the shorter size
    Vec out(na + nb - 1);
    for (std::size_t off = 0; off < na; off += nb) {
        std::size_t len = std::min(nb, na - off);
        Vec part = (len == nb) ? kara_balanced(a + off, b, nb) : kara_mul(a + off, len, b, nb);
        add_into(out, off, part);
    }
    return out;
}

// Factor |x| into primes (trial division, then Pollard-Brent rho on the cofactor).
void factor_into(Int x, std::vector<Int>& primes);

Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        std::size_t r = 1;
        const std::size_t m = 128;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int d = abs(x - y);
                    q = q * d;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(Int x, std::vector<Int>& primes) {
    x = abs(x);
    if (x <= 1) return;
    for (unsigned long d = 2; d < (1ul << 16); d += (d == 2 ? 1 : 2)) {
        if (Int(d) * d > x) break;
        while (mpz_divisible_ui_p(x.get_mpz_t(), d)) {
            primes.emplace_back(d);
            x /= d;
        }
    }
    if (x == 1) return;
    if (mpz_probab_prime_p(x.get_mpz_t(), 40) > 0) {
        primes.push_back(x);
        return;
    }
    Int f = pollard_brent(x);
    factor_into(f, primes);
    factor_into(x / f, primes);
}

IntPoly strip_zero_roots(const IntPoly& a, bool& had_zero) {
    const auto& c = a.coeffs();
    std::size_t k = 0;
    while (k < c.size() && sgn(c[k]) == 0) ++k;
    had_zero = k > 0;
    return IntPoly(std::vector<Int>(c.begin() + static_cast<long>(k), c.end()), a.var());
}

// Radical of a (primitive), with the zero root removed; flags whether 0 was a root.
IntPoly root_carrier(const IntPoly& a, bool& had_zero) {
    IntPoly f = strip_zero_roots(a, had_zero);
    if (f.degree() <= 0) return f;
    if (f.degree() > 64 && is_squarefree(f)) return primitive_part(f);
    return squarefree_part(f);
}

std::vector<Rat> finish_roots(std::vector<Rat> r, bool had_zero) {
    if (had_zero) r.emplace_back(0);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

}  // namespace

IntPoly::IntPoly(std::vector<Int> coeffs, std::string var) : c_(std::move(coeffs)), var_(std::move(var)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs, std::string var) : var_(std::move(var)) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(const Int& c, std::string var) { return IntPoly(std::vector<Int>{c}, std::move(var)); }

IntPoly IntPoly::monomial(const Int& c, std::size_t k, std::string var) {
    std::vector<Int> v(k + 1);
    v[k] = c;
    return IntPoly(std::move(v), std::move(var));
}

IntPoly IntPoly::with_var(std::string var) const {
    IntPoly r = *this;
    r.var_ = std::move(var);
    return r;
}

const Int& IntPoly::lc() const { return c_.empty() ? zero_int() : c_.back(); }

const Int& IntPoly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_int(); }

void IntPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Int> r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += y[i];
    return IntPoly(std::move(r), a.var());
}

IntPoly operator-(const IntPoly& a) {
    std::vector<Int> r = a.coeffs();
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r), a.var());
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

IntPoly operator*(const Int& s, const IntPoly& a) {
    std::vector<Int> r = a.coeffs();
    for (auto& v : r) v *= s;
    return IntPoly(std::move(r), a.var());
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) { return a + b; }

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly({}, a.var());
    if (&a == &b) return poly_sqr(a);
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    return IntPoly(kara_mul(x.data(), x.size(), y.data(), y.size()), a.var());
}

IntPoly poly_sqr(const IntPoly& a) {
    if (a.is_zero()) return a;
    const auto& x = a.coeffs();
    return IntPoly(kara_sqr(x.data(), x.size()), a.var());
}

IntPoly poly_divrem_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divrem_exact: division by zero polynomial");
    if (a.is_zero()) return IntPoly({}, a.var());
    if (a.degree() < b.degree()) throw NonExactDivision("poly_divrem_exact: degree of dividend below divisor");
    std::vector<Int> r = a.coeffs();
    const auto& d = b.coeffs();
    const int db = b.degree();
    const bool unit_lead = (b.lc() == 1);
    std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1));
    Int t;
    for (int i = a.degree(); i >= db; --i) {
        Int& top = r[static_cast<std::size_t>(i)];
        if (sgn(top) == 0) continue;
        if (unit_lead) {
            t = top;
        } else {
            if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t()))
                throw NonExactDivision("poly_divrem_exact: coefficient division is not exact");
            mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lc().get_mpz_t());
        }
        const std::size_t shift = static_cast<std::size_t>(i - db);
        for (int j = 0; j <= db; ++j) mpz_submul(r[shift + j].get_mpz_t(), t.get_mpz_t(), d[j].get_mpz_t());
        q[shift] = t;
    }
    for (int i = 0; i < db; ++i)
        if (sgn(r[static_cast<std::size_t>(i)]) != 0) throw NonExactDivision("poly_divrem_exact: nonzero remainder");
    return IntPoly(std::move(q), a.var());
}

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem: division by zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<Int> r = a.coeffs();
    const auto& d = b.coeffs();
    const int db = b.degree();
    int e = a.degree() - db + 1;
    for (int i = a.degree(); i >= db; --i) {
        Int top = r[static_cast<std::size_t>(i)];
        for (auto& v : r) v *= b.lc();
        const std::size_t shift = static_cast<std::size_t>(i - db);
        for (int j = 0; j <= db; ++j) mpz_submul(r[shift + j].get_mpz_t(), top.get_mpz_t(), d[j].get_mpz_t());
        --e;
    }
    Int f;
    mpz_pow_ui(f.get_mpz_t(), b.lc().get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& v : r) v *= f;
    return IntPoly(std::move(r), a.var());
}

IntPoly derivative(const IntPoly& a) {
    const auto& c = a.coeffs();
    if (c.size() <= 1) return IntPoly({}, a.var());
    std::vector<Int> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(r), a.var());
}

Int content(const IntPoly& a) {
    Int g = 0;
    for (const auto& v : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    if (sgn(a.lc()) < 0) g = -g;
    std::vector<Int> r = a.coeffs();
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(r), a.var());
}

IntPoly pow(const IntPoly& a, unsigned k) {
    IntPoly r = IntPoly::constant(1, a.var());
    IntPoly b = a;
    while (k != 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k != 0) b = poly_sqr(b);
    }
    return r;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_gcd: both arguments are zero");
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    IntPoly x = primitive_part(a);
    IntPoly y = primitive_part(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        if (y.degree() == 0) return IntPoly::constant(1, a.var());
        IntPoly r = pseudo_rem(x, y);
        x = std::move(y);
        y = r.is_zero() ? r : primitive_part(r);
    }
    return primitive_part(x);
}

bool coprime(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.degree() == 0;
    if (b.is_zero()) return a.degree() == 0;
    if (a.degree() == 0 || b.degree() == 0) return true;
    // A nontrivial rational gcd survives reduction modulo any prime that
    // keeps both leading coefficients.
    PrimeStream primes(60, 0x5eedc0ffeeULL);
    for (int attempt = 0; attempt < 6; ++attempt) {
        u64 p = primes.next();
        if (mod_u64(a.lc(), p) == 0 || mod_u64(b.lc(), p) == 0) continue;
        if (gcd(mod_reduce(a, p), mod_reduce(b, p)).degree() == 0) return true;
    }
    return poly_gcd(a, b).degree() == 0;
}

bool is_squarefree(const IntPoly& a) {
    if (a.degree() <= 0) return true;
    return coprime(a, derivative(a));
}

IntPoly squarefree_part(const IntPoly& a) {
    if (a.degree() <= 0) return primitive_part(a);
    IntPoly g = poly_gcd(a, derivative(a));
    return primitive_part(poly_divrem_exact(primitive_part(a), g));
}

Int eval(const IntPoly& a, const Int& x) {
    Int r = 0;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r *= x;
        r += c[i];
    }
    return r;
}

Int eval_homogeneous(const IntPoly& a, const Int& num, const Int& den) {
    Int r = 0;
    Int dpow = 1;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * num + c[i] * dpow;
        dpow *= den;
    }
    return r;
}

std::vector<Int> positive_divisors(const Int& x) {
    if (sgn(x) == 0) throw std::invalid_argument("positive_divisors: zero has no finite divisor set");
    std::vector<Int> primes;
    factor_into(x, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<Int> divs{Int(1)};
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        const std::size_t count = divs.size();
        Int pk = 1;
        for (std::size_t e = 0; e < j - i; ++e) {
            pk *= primes[i];
            for (std::size_t k = 0; k < count; ++k) divs.push_back(divs[k] * pk);
        }
        i = j;
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<Rat> rational_roots_by_divisors(const IntPoly& a) {
    if (a.degree() < 1) return {};
    bool had_zero = false;
    IntPoly f = strip_zero_roots(a, had_zero);
    std::vector<Rat> out;
    if (f.degree() >= 1) {
        const auto num = positive_divisors(f[0]);
        const auto den = positive_divisors(f.lc());
        for (const auto& v : den) {
            for (const auto& u : num) {
                Int g;
                mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
                if (g != 1) continue;
                for (int s : {1, -1}) {
                    if (sgn(eval_homogeneous(f, s * u, v)) == 0) out.emplace_back(Rat(s * u, v));
                }
            }
        }
    }
    return finish_roots(std::move(out), had_zero);
}

std::vector<Rat> rational_roots_padic(const IntPoly& a) {
    if (a.degree() < 1) return {};
    bool had_zero = false;
    IntPoly f = root_carrier(a, had_zero);
    std::vector<Rat> out;
    if (f.degree() >= 1) {
        // g(y) = lc^(d-1) f(y / lc) is monic; its integer roots y give y / lc.
        const int d = f.degree();
        const Int lead = f.lc();
        std::vector<Int> gc(static_cast<std::size_t>(d + 1));
        Int lp = 1;
        for (int i = d - 1; i >= 0; --i) {
            gc[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * lp;
            lp *= lead;
        }
        gc[static_cast<std::size_t>(d)] = 1;
        IntPoly g(std::move(gc), f.var());
        IntPoly dg = derivative(g);
        Int bound = 0;
        for (int i = 0; i < d; ++i) bound = std::max(bound, Int(abs(g[static_cast<std::size_t>(i)])));
        bound = 2 * (bound + 1) + 1;

        PrimeStream primes(60, 0xa11ce5eedULL);
        u64 p = 0;
        ModPoly gp;
        for (int attempt = 0; attempt < 64; ++attempt) {
            u64 cand = primes.next();
            ModPoly red = mod_reduce(g, cand);
            if (is_squarefree(red)) {
                p = cand;
                gp = std::move(red);
                break;
            }
        }
        if (p == 0) throw InternalConsistency("rational_roots_padic: no squarefree reduction found");

        for (u64 r0 : roots(gp)) {
            Int modulus = static_cast<unsigned long>(p);
            Int r = static_cast<unsigned long>(r0);
            while (modulus < bound) {
                modulus *= modulus;
                Int num = eval(g, r);
                Int den = eval(dg, r);
                Int inv;
                mpz_mod(den.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
                if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
                    throw InternalConsistency("rational_roots_padic: Hensel step hit a singular root");
                r = r - num * inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
            }
            Int y = r;
            if (2 * y > modulus) y -= modulus;
            if (sgn(eval(g, y)) == 0) out.emplace_back(Rat(y, lead));
        }
        for (auto& v : out) v.canonicalize();
    }
    return finish_roots(std::move(out), had_zero);
}

std::vector<Rat> rational_roots(const IntPoly& a) {
    if (a.degree() < 1) return {};
    bool had_zero = false;
    IntPoly f = strip_zero_roots(a, had_zero);
    if (f.degree() < 1) return finish_roots({}, had_zero);
    // Divisor enumeration is only attractive for small head and tail.
    const bool small = mpz_sizeinbase(f[0].get_mpz_t(), 2) <= 40 && mpz_sizeinbase(f.lc().get_mpz_t(), 2) <= 40;
    if (small) {
        auto r = rational_roots_by_divisors(f);
        return finish_roots(std::move(r), had_zero);
    }
    auto r = rational_roots_padic(f);
    return finish_roots(std::move(r), had_zero);
}

std::string to_string(const IntPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (sgn(c[i]) == 0) continue;
        Int v = c[i];
        if (!first) os << (sgn(v) < 0 ? " - " : " + ");
        else if (sgn(v) < 0) os << "-";
        v = abs(v);
        if (i == 0 || v != 1) os << v.get_str();
        if (i > 0) {
            if (v != 1) os << "*";
            os << a.var();
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace quadmod
