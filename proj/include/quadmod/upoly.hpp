#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/errors.hpp"

namespace quadmod {

// Dense univariate polynomials over an exact coefficient domain R. R must
// provide +, -, *, unary -, is_zero(R), ring_one(R) and exact_div(R, R).

inline bool is_zero(const Int& a) { return sgn(a) == 0; }
inline Int ring_one(const Int&) { return Int(1); }

inline Int exact_div(const Int& a, const Int& b) {
    if (sgn(b) == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw NonExactDivision("exact_div: integer quotient is not exact");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

namespace detail {
template <class R>
bool coeff_is_zero(const R& x) {
    return is_zero(x);
}
}  // namespace detail

template <class R>
struct UPoly {
    std::vector<R> c;  ///< c[i] is the coefficient of x^i

    UPoly() = default;
    explicit UPoly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const R& lc() const { return c.back(); }

    void trim() {
        while (!c.empty() && detail::coeff_is_zero(c.back())) c.pop_back();
    }
};

template <class R>
R ring_pow(const R& a, unsigned k) {
    R r = ring_one(a);
    R b = a;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

/// lc(b)^(deg a - deg b + 1) * a mod b.
template <class R>
UPoly<R> prem(const UPoly<R>& a, const UPoly<R>& b) {
    if (b.is_zero()) throw std::invalid_argument("prem: zero divisor");
    if (a.degree() < b.degree()) return a;
    const int db = b.degree();
    int e = a.degree() - db + 1;
    const R& lb = b.lc();
    UPoly<R> r = a;
    while (!r.is_zero() && r.degree() >= db) {
        const R lr = r.lc();
        const int k = r.degree() - db;
        for (auto& x : r.c) x = lb * x;
        for (int j = 0; j <= db; ++j) r.c[k + j] = r.c[k + j] - lr * b.c[j];
        r.trim();
        --e;
    }
    if (e > 0) {
        const R f = ring_pow(lb, static_cast<unsigned>(e));
        for (auto& x : r.c) x = f * x;
    }
    return r;
}

template <class R>
UPoly<R> exact_div_scalar(const UPoly<R>& a, const R& s) {
    UPoly<R> r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(exact_div(x, s));
    r.trim();
    return r;
}

/// Res(a, b) = lc(a)^deg b * prod b(roots of a), by the subresultant
/// pseudo-remainder sequence. Zero if either input is zero.
template <class R>
R resultant(UPoly<R> a, UPoly<R> b) {
    if (a.is_zero() || b.is_zero()) return R{};
    if (a.degree() == 0) return ring_pow(a.lc(), static_cast<unsigned>(b.degree()));
    if (b.degree() == 0) return ring_pow(b.lc(), static_cast<unsigned>(a.degree()));
    bool negate = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) negate = true;
    }
    R g = ring_one(a.lc());
    R h = ring_one(a.lc());
    for (;;) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
        UPoly<R> r = prem(a, b);
        a = std::move(b);
        if (r.is_zero()) return R{};
        b = exact_div_scalar(r, R(g * ring_pow(h, static_cast<unsigned>(delta))));
        g = a.lc();
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = exact_div(ring_pow(g, static_cast<unsigned>(delta)), ring_pow(h, static_cast<unsigned>(delta - 1)));
        if (b.degree() == 0) {
            const int da = a.degree();
            R res = exact_div(ring_pow(b.lc(), static_cast<unsigned>(da)), ring_pow(h, static_cast<unsigned>(da - 1)));
            return negate ? R(-res) : res;
        }
    }
}

}  // namespace quadmod
