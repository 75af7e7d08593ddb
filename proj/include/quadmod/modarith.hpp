#pragma once

#include <cstdint>
#include <random>

#include "quadmod/bigint.hpp"

namespace quadmod {

// Word-sized prime field arithmetic. All moduli are below 2^63 so that the
// Shoup reduction below stays within one conditional subtraction.

// Conditional corrections use masks: residues are effectively random, so a
// branch here mispredicts about half the time.
inline u64 add_mod(u64 a, u64 b, u64 p) {
    u64 s = a + b - p;
    return s + (p & (0 - (s >> 63)));
}

inline u64 sub_mod(u64 a, u64 b, u64 p) {
    u64 d = a - b;
    return d + (p & (0 - static_cast<u64>(a < b)));
}

inline u64 neg_mod(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p);

/// Inverse of a modulo p; throws InternalConsistency when gcd(a, p) != 1.
u64 inv_mod(u64 a, u64 p);

/// Multiplication by a fixed residue with a precomputed quotient (Shoup).
struct ShoupMul {
    u64 w = 0;
    u64 wq = 0;

    ShoupMul() = default;
    ShoupMul(u64 w_, u64 p) : w(w_), wq(static_cast<u64>((static_cast<u128>(w_) << 64) / p)) {}

    u64 operator()(u64 x, u64 p) const {
        u64 q = static_cast<u64>((static_cast<u128>(x) * wq) >> 64);
        u64 r = x * w - q * p - p;
        return r + (p & (0 - (r >> 63)));
    }
};

/// Number of products (< p^2) that can be summed in an unsigned 128-bit
/// accumulator before it must be reduced.
inline unsigned lazy_chunk(u64 p) {
    u128 sq = static_cast<u128>(p - 1) * (p - 1);
    if (sq == 0) return 256;
    u128 n = ~static_cast<u128>(0) / sq;
    return n >= 256 ? 256u : static_cast<unsigned>(n < 1 ? 1 : n);
}

/// Deterministic Miller-Rabin using the first `rounds` primes as witnesses.
bool is_prime_u64(u64 n, int rounds = 40);

/// Deterministic stream of random primes of a fixed bit size.
class PrimeStream {
public:
    PrimeStream(int bits, u64 seed);

    u64 next();
    int bits() const { return bits_; }

private:
    int bits_;
    std::mt19937_64 rng_;
};

/// A prime with exactly `bits` bits (16 <= bits <= 62), deterministic in seed.
u64 random_prime(int bits, u64 seed);

}  // namespace quadmod
