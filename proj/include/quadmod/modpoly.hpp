#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/modarith.hpp"

namespace quadmod {

class IntPoly;

/// Dense univariate polynomial over F_p, coefficients reduced into [0, p).
class ModPoly {
public:
    ModPoly() = default;
    /// Coefficients are reduced mod p.
    ModPoly(std::vector<u64> coeffs, u64 p);

    static ModPoly zero(u64 p) { return ModPoly({}, p); }
    static ModPoly constant(u64 c, u64 p) { return ModPoly({c}, p); }
    static ModPoly monomial(u64 c, std::size_t k, u64 p);
    static ModPoly variable(u64 p) { return monomial(1, 1, p); }

    const std::vector<u64>& coeffs() const { return c_; }
    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    u64 lc() const { return c_.empty() ? 0 : c_.back(); }
    u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    /// Takes already reduced coefficients without rechecking them.
    static ModPoly from_reduced(std::vector<u64> coeffs, u64 p);

private:
    void trim();

    std::vector<u64> c_;
    u64 p_ = 2;
};

/// Coefficientwise reduction; the degree drops if p divides the lead.
ModPoly mod_reduce(const IntPoly& a, u64 p);

ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
ModPoly scale(const ModPoly& a, u64 s);

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b);
ModPoly rem(const ModPoly& a, const ModPoly& b);
ModPoly make_monic(const ModPoly& a);
/// Monic gcd (zero only if both inputs are zero).
ModPoly gcd(const ModPoly& a, const ModPoly& b);
ModPoly derivative(const ModPoly& a);
ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f);
ModPoly powmod(const ModPoly& a, const Int& e, const ModPoly& f);
/// x^e mod f by square-and-shift.
ModPoly x_powmod(const Int& e, const ModPoly& f);
u64 eval(const ModPoly& a, u64 x);
bool is_squarefree(const ModPoly& a);

struct DdfComponent {
    int degree;       ///< common degree of the irreducible factors
    ModPoly product;  ///< monic product of all irreducible factors of that degree
};

/// Distinct-degree factorization of a squarefree polynomial (normalized to
/// monic). Throws NotSquarefree otherwise.
std::vector<DdfComponent> ddf(const ModPoly& f);

/// Same contract as ddf, computed by repeated squaring of x^(p^d) without the
/// Frobenius matrix. Kept as a reference for tests.
std::vector<DdfComponent> ddf_reference(const ModPoly& f);

/// Degree pattern: d repeated deg(component)/d times, ascending.
std::vector<int> degree_multiset(const std::vector<DdfComponent>& comps);

/// Distinct roots of f in F_p, ascending.
std::vector<u64> roots(const ModPoly& f, u64 seed = 1);

std::string to_string(const ModPoly& a, const std::string& var = "x");

}  // namespace quadmod
