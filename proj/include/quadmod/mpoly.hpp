#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/intpoly.hpp"
#include "quadmod/upoly.hpp"

namespace quadmod {

/// Packed exponent vector: 16 bits per variable, variable 0 in the top bits,
/// so integer order on equal total degree is lex order.
using Mono = std::uint64_t;

inline constexpr int kMaxVars = 4;

inline unsigned mono_exp(Mono m, int var) { return static_cast<unsigned>((m >> (48 - 16 * var)) & 0xFFFF); }

inline Mono mono_make(const std::array<unsigned, kMaxVars>& e) {
    Mono m = 0;
    for (int i = 0; i < kMaxVars; ++i) m |= static_cast<Mono>(e[i] & 0xFFFF) << (48 - 16 * i);
    return m;
}

inline unsigned mono_total(Mono m) {
    return mono_exp(m, 0) + mono_exp(m, 1) + mono_exp(m, 2) + mono_exp(m, 3);
}

/// Descending graded-lex order.
inline bool grlex_greater(Mono a, Mono b) {
    const unsigned ta = mono_total(a), tb = mono_total(b);
    return ta != tb ? ta > tb : a > b;
}

inline bool mono_divides(Mono d, Mono m) {
    for (int i = 0; i < kMaxVars; ++i)
        if (mono_exp(d, i) > mono_exp(m, i)) return false;
    return true;
}

struct Term {
    Mono m;
    Int c;
};

/// Sparse polynomial over Z in up to four named variables. Terms are kept in
/// descending graded-lex order with no zero coefficients. A polynomial with an
/// empty variable list is a constant and combines with any ring.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars);
    MPoly(std::vector<std::string> vars, std::vector<Term> terms);

    static MPoly constant(const Int& c, std::vector<std::string> vars = {});
    static MPoly variable(const std::vector<std::string>& vars, int idx);
    static MPoly monomial(const std::vector<std::string>& vars, const std::array<unsigned, kMaxVars>& e, const Int& c);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
    /// -1 for zero.
    int degree(int var) const;
    int total_degree() const;
    const Int& lc() const;
    Mono lm() const { return t_.empty() ? 0 : t_.front().m; }
    Int coeff(Mono m) const;
    /// Index of a variable name, or -1.
    int var_index(const std::string& name) const;

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

private:
    void canonicalize();

    std::vector<std::string> vars_;
    std::vector<Term> t_;
};

inline bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }

/// Variable list of a binary operation; throws std::invalid_argument on a clash.
std::vector<std::string> common_vars(const MPoly& a, const MPoly& b);

MPoly operator+(const MPoly& a, const MPoly& b);
MPoly operator-(const MPoly& a, const MPoly& b);
MPoly operator-(const MPoly& a);
MPoly operator*(const MPoly& a, const MPoly& b);
MPoly operator*(const Int& s, const MPoly& a);
MPoly pow(const MPoly& a, unsigned k);

/// Exact quotient a / b over Z; throws NonExactDivision otherwise.
MPoly exact_div(const MPoly& a, const MPoly& b);
/// True with *q set iff b divides a exactly.
bool try_exact_div(const MPoly& a, const MPoly& b, MPoly* q);

Int content(const MPoly& a);
/// Greatest common divisor over Z with positive leading coefficient; its
/// integer content is the gcd of the input contents. Recursive primitive PRS
/// in the highest occurring variable.
MPoly gcd(const MPoly& a, const MPoly& b);
/// a / content(a) with positive leading coefficient under graded-lex.
MPoly primitive_part(const MPoly& a);

/// Substitute var = num/den and multiply through by den^deg_var(a).
MPoly substitute(const MPoly& a, int var, const Int& num, const Int& den = 1);
/// Largest k with var^k dividing a, and a / var^k.
MPoly strip_var_power(const MPoly& a, int var, unsigned* k = nullptr);
/// Value mod p at point (one residue per variable).
u64 eval_mod(const MPoly& a, std::span<const u64> point, u64 p);
/// Exact value at an integer point.
Int eval(const MPoly& a, std::span<const Int> point);

/// Rename into a new variable list by name; variables absent from the target
/// must not occur.
MPoly remap(const MPoly& a, const std::vector<std::string>& vars);

/// The polynomial as univariate in var; it must not involve other variables.
IntPoly to_intpoly(const MPoly& a, int var);
MPoly from_intpoly(const IntPoly& a, const std::vector<std::string>& vars, int var);

/// View as a polynomial in var with coefficients free of var.
UPoly<MPoly> to_univariate(const MPoly& a, int var);
MPoly from_univariate(const UPoly<MPoly>& a, int var, const std::vector<std::string>& vars);

/// Coefficients as a dense matrix view: var0 exponent -> IntPoly in var1.
/// Requires a bivariate polynomial.
std::vector<IntPoly> bivariate_rows(const MPoly& a);

std::string to_string(const MPoly& a);

// Coefficient-ring hooks for UPoly<MPoly>.
inline bool is_zero(const MPoly& a) { return a.is_zero(); }
inline MPoly ring_one(const MPoly&) { return MPoly::constant(1); }

using BiPolyZ = MPoly;

}  // namespace quadmod
