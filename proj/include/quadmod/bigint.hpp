#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace quadmod {

using Int = mpz_class;
using Rat = mpq_class;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::string to_decimal(const Int& x) { return x.get_str(10); }

inline std::string to_decimal(const Rat& x) {
    Rat y = x;
    y.canonicalize();
    return y.get_str(10);
}

/// Nonnegative residue of x modulo p.
inline u64 mod_u64(const Int& x, u64 p) {
    // mpz_fdiv_ui returns the nonnegative remainder for a positive divisor.
    return static_cast<u64>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p)));
}

/// Height of a rational: max(|num|, |den|) in lowest terms.
inline Int height(const Rat& r) {
    Rat y = r;
    y.canonicalize();
    Int a = abs(y.get_num());
    Int b = y.get_den();
    return a > b ? a : b;
}

}  // namespace quadmod
