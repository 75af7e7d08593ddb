#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/intpoly.hpp"

namespace quadmod {

enum class Verdict { Irreducible, Inconclusive, ReducibleWitness };

std::string to_string(Verdict v);

struct DegreePattern {
    u64 p = 0;
    std::vector<int> degrees;  ///< ascending, sums to deg f
};

/// Degree multiset of f mod p, or nullopt when p is bad for f (p divides the
/// leading coefficient or the reduction is not squarefree).
std::optional<DegreePattern> degree_pattern(const IntPoly& f, u64 p);

/// Sums of sub-multisets of `degrees`, as a membership table indexed 0..total.
std::vector<bool> subset_sums(const std::vector<int>& degrees);

struct FactorWitness {
    IntPoly factor;    ///< primitive, 0 < deg < deg f
    IntPoly cofactor;  ///< factor * cofactor == f
};

struct IrredCertificate {
    Verdict verdict = Verdict::Inconclusive;
    int degree = 0;
    std::vector<DegreePattern> patterns;  ///< good primes, in draw order
    std::vector<int> possible_sums;       ///< surviving proper-factor degrees in (0, deg)
    u64 seed = 0;
    int primes_tried = 0;  ///< good and bad
    int bad_primes = 0;
    std::optional<FactorWitness> witness;
};

struct SieveOptions {
    int max_primes = 100;
    int prime_bits = 60;
    u64 seed = 1;
};

/// Linear factor over Q if f has a rational root and deg f >= 2.
std::optional<FactorWitness> rational_factor_scan(const IntPoly& f);

/// Mod-p degree-pattern sieve. Throws NotSquarefreeOverQ on non-squarefree
/// input and std::invalid_argument on constant input.
IrredCertificate sieve(const IntPoly& f, const SieveOptions& opt = {});

}  // namespace quadmod
