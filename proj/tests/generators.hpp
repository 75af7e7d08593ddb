#pragma once

// Small random generators shared by the property tests.

#include <random>
#include <vector>

#include "quadmod/intpoly.hpp"
#include "quadmod/modpoly.hpp"
#include "quadmod/mpoly.hpp"

namespace quadmod::testgen {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(u64 seed) : rng(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    u64 below(u64 p) { return std::uniform_int_distribution<u64>(0, p - 1)(rng); }

    IntPoly intpoly(int max_deg, long bound) {
        std::vector<Int> c(static_cast<std::size_t>(range(0, max_deg) + 1));
        for (auto& x : c) x = range(-bound, bound);
        return IntPoly(std::move(c));
    }

    ModPoly modpoly(int deg, u64 p, bool monic) {
        std::vector<u64> c(static_cast<std::size_t>(deg + 1));
        for (auto& x : c) x = below(p);
        if (monic) c.back() = 1;
        else if (c.back() == 0) c.back() = 1 + below(p - 1);
        return ModPoly(std::move(c), p);
    }

    MPoly mpoly(const std::vector<std::string>& vars, int max_terms, unsigned max_exp, long bound) {
        MPoly out(vars);
        const long k = range(1, max_terms);
        for (long i = 0; i < k; ++i) {
            std::array<unsigned, kMaxVars> e{};
            for (std::size_t v = 0; v < vars.size(); ++v) e[v] = static_cast<unsigned>(range(0, max_exp));
            out = out + MPoly::monomial(vars, e, Int(range(-bound, bound)));
        }
        return out;
    }
};

}  // namespace quadmod::testgen
