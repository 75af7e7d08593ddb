#include "quadmod/modarith.hpp"

#include <array>
#include <stdexcept>

#include "quadmod/errors.hpp"

namespace quadmod {

namespace {

constexpr std::array<u64, 40> kWitnesses = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

bool miller_rabin_round(u64 n, u64 d, int s, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e != 0) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv_mod(u64 a, u64 p) {
    // extended Euclid on signed 128-bit to avoid overflow near 2^63
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a % p;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw InternalConsistency("inv_mod: residue not invertible");
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n, int rounds) {
    if (n < 2) return false;
    for (u64 q : kWitnesses) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // A single round rejects nearly every composite; the full schedule only
    // runs on survivors.
    int limit = rounds < 1 ? 1 : (rounds > 40 ? 40 : rounds);
    for (int i = 0; i < limit; ++i) {
        if (!miller_rabin_round(n, d, s, kWitnesses[i])) return false;
    }
    return true;
}

PrimeStream::PrimeStream(int bits, u64 seed) : bits_(bits), rng_(seed) {
    if (bits < 2 || bits > 62) throw std::invalid_argument("PrimeStream: bits must lie in [2, 62]");
}

u64 PrimeStream::next() {
    const u64 top = u64{1} << (bits_ - 1);
    const u64 mask = (bits_ == 64) ? ~u64{0} : ((u64{1} << bits_) - 1);
    for (;;) {
        u64 x = (rng_() & mask) | top | 1;
        if (bits_ == 2) x = 3;
        if (is_prime_u64(x)) return x;
    }
}

u64 random_prime(int bits, u64 seed) {
    if (bits < 16 || bits > 62) throw std::invalid_argument("random_prime: bits must lie in [16, 62]");
    return PrimeStream(bits, seed).next();
}

}  // namespace quadmod
