#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "quadmod/bigint.hpp"

namespace quadmod {

/// Dense univariate polynomial over Z. coeffs()[i] is the coefficient of
/// degree i; the top coefficient is nonzero unless the polynomial is zero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs, std::string var = "c");
    IntPoly(std::initializer_list<long> coeffs, std::string var = "c");

    static IntPoly constant(const Int& c, std::string var = "c");
    static IntPoly monomial(const Int& c, std::size_t k, std::string var = "c");
    static IntPoly variable(std::string var = "c") { return monomial(1, 1, std::move(var)); }

    const std::vector<Int>& coeffs() const { return c_; }
    const std::string& var() const { return var_; }
    IntPoly with_var(std::string var) const;

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Int& lc() const;
    const Int& operator[](std::size_t i) const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

private:
    void trim();

    std::vector<Int> c_;
    std::string var_ = "c";
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const Int& s, const IntPoly& a);

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sqr(const IntPoly& a);

/// Quotient q with q*b == a; throws NonExactDivision otherwise.
IntPoly poly_divrem_exact(const IntPoly& a, const IntPoly& b);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);

IntPoly derivative(const IntPoly& a);
Int content(const IntPoly& a);
/// a / content(a) with positive leading coefficient.
IntPoly primitive_part(const IntPoly& a);
IntPoly pow(const IntPoly& a, unsigned k);

/// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

/// True iff gcd(a, b) is constant. Uses a mod-p certificate when possible
/// and falls back to the exact gcd.
bool coprime(const IntPoly& a, const IntPoly& b);
bool is_squarefree(const IntPoly& a);
/// a / gcd(a, a'), primitive.
IntPoly squarefree_part(const IntPoly& a);

Int eval(const IntPoly& a, const Int& x);
/// den^deg(a) * a(num/den).
Int eval_homogeneous(const IntPoly& a, const Int& num, const Int& den);

/// All distinct rational roots, ascending.
std::vector<Rat> rational_roots(const IntPoly& a);
/// Candidate enumeration over divisors of the head and tail coefficients.
std::vector<Rat> rational_roots_by_divisors(const IntPoly& a);
/// Roots mod a prime lifted p-adically and verified exactly.
std::vector<Rat> rational_roots_padic(const IntPoly& a);

/// Positive divisors of |x| by trial division (x != 0).
std::vector<Int> positive_divisors(const Int& x);

std::string to_string(const IntPoly& a);

}  // namespace quadmod
