#include "quadmod/modpoly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "quadmod/errors.hpp"
#include "quadmod/intpoly.hpp"
#include "quadmod/kernels.hpp"

namespace quadmod {

namespace {

// r <- r mod b in place, b nonzero.
void rem_inplace(std::vector<u64>& r, const std::vector<u64>& b, u64 p) {
    const std::size_t db = b.size() - 1;
    const u64 inv = inv_mod(b.back(), p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (r.size() > db) {
        const std::size_t i = r.size() - 1;
        const ShoupMul t(mul_mod(r[i], inv, p), p);
        const std::size_t shift = i - db;
        for (std::size_t j = 0; j < db; ++j) r[shift + j] = sub_mod(r[shift + j], t(b[j], p), p);
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
}

std::vector<u64> monic_vec(std::vector<u64> v, u64 p) {
    if (v.empty() || v.back() == 1) return v;
    const ShoupMul inv(inv_mod(v.back(), p), p);
    for (auto& x : v) x = inv(x, p);
    return v;
}

ModPoly x_minus(const ModPoly& h, const ModPoly& modulus) {
    // (h - x) mod modulus
    ModPoly r = rem(h, modulus);
    return rem(r - ModPoly::variable(h.modulus()), modulus);
}

// Shared DDF loop; frob maps h to h^p mod f.
template <class Frob>
std::vector<DdfComponent> ddf_loop(const ModPoly& f_in, Frob&& frob) {
    const u64 p = f_in.modulus();
    if (f_in.is_zero()) throw std::invalid_argument("ddf: zero polynomial");
    ModPoly f = make_monic(f_in);
    if (f.degree() == 0) return {};
    if (!is_squarefree(f)) throw NotSquarefree("ddf: input is not squarefree mod " + std::to_string(p));
    std::vector<DdfComponent> out;
    if (f.degree() == 1) {
        out.push_back({1, f});
        return out;
    }
    ModPoly rest = f;
    ModPoly h = rem(ModPoly::variable(p), f);
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = frob(h);
        ModPoly g = gcd(rest, x_minus(h, rest));
        if (g.degree() > 0) {
            out.push_back({d, g});
            rest = divrem(rest, g).first;
        }
    }
    if (rest.degree() > 0) out.push_back({rest.degree(), rest});
    return out;
}

}  // namespace

ModPoly::ModPoly(std::vector<u64> coeffs, u64 p) : c_(std::move(coeffs)), p_(p) {
    if (p < 2) throw std::invalid_argument("ModPoly: modulus must be at least 2");
    for (auto& x : c_) x %= p;
    trim();
}

ModPoly ModPoly::from_reduced(std::vector<u64> coeffs, u64 p) {
    ModPoly r;
    r.c_ = std::move(coeffs);
    r.p_ = p;
    r.trim();
    return r;
}

ModPoly ModPoly::monomial(u64 c, std::size_t k, u64 p) {
    std::vector<u64> v(k + 1, 0);
    v[k] = c;
    return ModPoly(std::move(v), p);
}

void ModPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly mod_reduce(const IntPoly& a, u64 p) {
    std::vector<u64> v;
    v.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) v.push_back(mod_u64(x, p));
    return ModPoly::from_reduced(std::move(v), p);
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    const u64 p = a.modulus();
    std::vector<u64> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = add_mod(a[i], b[i], p);
    return ModPoly::from_reduced(std::move(r), p);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    const u64 p = a.modulus();
    std::vector<u64> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub_mod(a[i], b[i], p);
    return ModPoly::from_reduced(std::move(r), p);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    return ModPoly::from_reduced(kernels::convolve_mod(a.coeffs(), b.coeffs(), a.modulus()), a.modulus());
}

ModPoly scale(const ModPoly& a, u64 s) {
    const u64 p = a.modulus();
    const ShoupMul m(s % p, p);
    std::vector<u64> r = a.coeffs();
    for (auto& x : r) x = m(x, p);
    return ModPoly::from_reduced(std::move(r), p);
}

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divrem: division by zero polynomial");
    const u64 p = a.modulus();
    if (a.degree() < b.degree()) return {ModPoly::zero(p), a};
    std::vector<u64> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const u64 inv = inv_mod(b.lc(), p);
    std::vector<u64> q(r.size() - db, 0);
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        const u64 t = mul_mod(r[i], inv, p);
        q[i - db] = t;
        const ShoupMul tm(t, p);
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = sub_mod(r[i - db + j], tm(bc[j], p), p);
    }
    r.resize(db);
    return {ModPoly::from_reduced(std::move(q), p), ModPoly::from_reduced(std::move(r), p)};
}

ModPoly rem(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("rem: division by zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<u64> r = a.coeffs();
    rem_inplace(r, b.coeffs(), a.modulus());
    return ModPoly::from_reduced(std::move(r), a.modulus());
}

ModPoly make_monic(const ModPoly& a) { return ModPoly::from_reduced(monic_vec(a.coeffs(), a.modulus()), a.modulus()); }

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
    const u64 p = a.modulus();
    std::vector<u64> x = a.coeffs(), y = b.coeffs();
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        y = monic_vec(std::move(y), p);
        rem_inplace(x, y, p);
        std::swap(x, y);
    }
    return ModPoly::from_reduced(monic_vec(std::move(x), p), p);
}

ModPoly derivative(const ModPoly& a) {
    const u64 p = a.modulus();
    const auto& c = a.coeffs();
    if (c.size() <= 1) return ModPoly::zero(p);
    std::vector<u64> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = mul_mod(c[i], static_cast<u64>(i) % p, p);
    return ModPoly::from_reduced(std::move(r), p);
}

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f) { return rem(a * b, f); }

ModPoly powmod(const ModPoly& a, const Int& e, const ModPoly& f) {
    if (sgn(e) < 0) throw std::invalid_argument("powmod: negative exponent");
    ModPoly r = rem(ModPoly::constant(1, a.modulus()), f);
    ModPoly base = rem(a, f);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, f);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, f);
    }
    return r;
}

ModPoly x_powmod(const Int& e, const ModPoly& f) {
    if (sgn(e) < 0) throw std::invalid_argument("x_powmod: negative exponent");
    const u64 p = f.modulus();
    ModPoly r = rem(ModPoly::constant(1, p), f);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, f);
        if (mpz_tstbit(e.get_mpz_t(), i)) {
            std::vector<u64> v(r.coeffs().size() + 1, 0);
            std::copy(r.coeffs().begin(), r.coeffs().end(), v.begin() + 1);
            r = rem(ModPoly::from_reduced(std::move(v), p), f);
        }
    }
    return r;
}

u64 eval(const ModPoly& a, u64 x) {
    const u64 p = a.modulus();
    x %= p;
    const ShoupMul xm(x, p);
    u64 r = 0;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) r = add_mod(xm(r, p), c[i], p);
    return r;
}

bool is_squarefree(const ModPoly& a) {
    if (a.degree() <= 0) return true;
    return gcd(a, derivative(a)).degree() == 0;
}

std::vector<DdfComponent> ddf(const ModPoly& f) {
    const u64 p = f.modulus();
    if (f.degree() <= 1) return ddf_loop(f, [](const ModPoly& h) { return h; });
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<u64> qt;
    std::vector<u64> buf(n);
    return ddf_loop(f, [&](const ModPoly& h) {
        if (qt.empty()) qt = kernels::frobenius_matrix_t(f);
        std::vector<u64> hv(n, 0);
        std::copy(h.coeffs().begin(), h.coeffs().end(), hv.begin());
        kernels::matvec_mod(qt, n, n, hv, buf, p);
        return ModPoly::from_reduced(buf, p);
    });
}

std::vector<DdfComponent> ddf_reference(const ModPoly& f) {
    const u64 p = f.modulus();
    const ModPoly fm = make_monic(f);
    const Int e = static_cast<unsigned long>(p);
    return ddf_loop(f, [&](const ModPoly& h) { return powmod(h, e, fm); });
}

std::vector<int> degree_multiset(const std::vector<DdfComponent>& comps) {
    std::vector<int> out;
    for (const auto& c : comps)
        for (int k = 0; k < c.product.degree() / c.degree; ++k) out.push_back(c.degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> roots(const ModPoly& f_in, u64 seed) {
    if (f_in.is_zero()) throw std::invalid_argument("roots: zero polynomial has every element as a root");
    const u64 p = f_in.modulus();
    std::vector<u64> out;
    if (f_in.degree() <= 0) return out;
    if (p < 4096) {
        for (u64 x = 0; x < p; ++x)
            if (eval(f_in, x) == 0) out.push_back(x);
        return out;
    }
    ModPoly f = make_monic(f_in);
    // product of the distinct linear factors
    ModPoly xp = x_powmod(Int(static_cast<unsigned long>(p)), f);
    ModPoly g = gcd(f, xp - ModPoly::variable(p));
    std::mt19937_64 rng(seed);
    const Int half = Int(static_cast<unsigned long>((p - 1) / 2));
    std::vector<ModPoly> stack{g};
    while (!stack.empty()) {
        ModPoly h = std::move(stack.back());
        stack.pop_back();
        if (h.degree() <= 0) continue;
        if (h.degree() == 1) {
            out.push_back(neg_mod(mul_mod(h[0], inv_mod(h[1], p), p), p));
            continue;
        }
        for (;;) {
            const u64 a = rng() % p;
            ModPoly shift({a, 1}, p);
            ModPoly t = powmod(shift, half, h) - ModPoly::constant(1, p);
            ModPoly d = gcd(h, t);
            if (d.degree() > 0 && d.degree() < h.degree()) {
                stack.push_back(divrem(h, d).first);
                stack.push_back(std::move(d));
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const ModPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        if (i == 0 || c[i] != 1) os << c[i];
        if (i > 0) {
            if (c[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace quadmod
