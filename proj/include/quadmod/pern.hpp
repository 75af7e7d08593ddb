#pragma once

// Plane models of the curves of quadratic rational maps with a periodic
// critical point, in the normal form f(z) = (z^2 + p) / (z^2 + q) with
// critical points 0 and infinity, and in multiplier coordinates (s1, s2).

#include <string>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/intpoly.hpp"
#include "quadmod/mpoly.hpp"

namespace quadmod::pern {

inline constexpr int kDefaultMaxOrbit = 6;
inline constexpr int kDefaultMaxModel = 5;

/// {"p", "q"}
const std::vector<std::string>& family_vars();
/// {"s1", "s2"}
const std::vector<std::string>& milnor_vars();

struct FamilyOrbit {
    int n = 0;
    MPoly N;            ///< numerator of f^n(0)
    MPoly D;            ///< denominator of f^n(0)
    Int content = 1;    ///< common integer content removed along the way
};

/// N_0 = 0, D_0 = 1, N_{k+1} = N_k^2 + p D_k^2, D_{k+1} = N_k^2 + q D_k^2.
FamilyOrbit family_orbit(int n, int max_n = kDefaultMaxOrbit);

/// Gamma_n = N_n / prod_{d | n, d < n} Gamma_d, primitive. Throws
/// NonExactDivision naming the divisor that fails.
MPoly exact_period_locus(int n, int max_n = kDefaultMaxOrbit);

struct RationalFunction {
    MPoly num;
    MPoly den;
};

/// Elementary symmetric functions of the three fixed-point multipliers as
/// reduced rational functions of (p, q). Checked: s3 = s1 - 2.
struct MultiplierSymmetrics {
    RationalFunction s1, s2, s3;
    MPoly fixed_point_resultant;  ///< Res_z(z^3 - z^2 + q z - p, z^2 + q)
};

const MultiplierSymmetrics& multiplier_symmetrics();

struct Certificate {
    bool exact = false;
    unsigned weight = 0;               ///< power of the denominator cleared
    std::size_t numerator_terms = 0;   ///< size of the cleared numerator
};

struct FactorVote {
    MPoly factor;
    int hits = 0;
    int samples = 0;
    bool kept = false;
};

struct CurveModel {
    int n = 0;
    MPoly gamma;   ///< exact-period locus in (p, q)
    MPoly pmodel;  ///< plane model in (s1, s2), primitive, positive lead
    bool used_fallback = false;
    Certificate certificate;
    std::vector<FactorVote> votes;
    unsigned q_power_r1 = 0;  ///< powers of q stripped after eliminating p
    unsigned q_power_r2 = 0;
    int r1_q_degree = 0;      ///< deg_q of the first eliminant after stripping
    bool fiber_squarefree = false;
};

/// Eliminate (p, q) from {Gamma_n = 0, s1 = S1, s2 = S2}. Throws
/// EliminationFailure when no factor survives both sampling and the exact
/// certificate, ResourceLimit when n > max_n.
CurveModel plane_model(int n, u64 seed = 1, int max_n = kDefaultMaxModel);

/// A point of Gamma = 0 over F_prime with its multiplier coordinates.
struct CurvePoint {
    u64 p0 = 0, q0 = 0, s1 = 0, s2 = 0;
};

/// Points found by solving gamma(p0, q) = 0 for random p0 (or gamma(p, q0) = 0
/// when gamma does not involve q); points where the
/// normal form or the coordinates degenerate are skipped.
std::vector<CurvePoint> sample_curve_points(const MPoly& gamma, u64 prime, int count, u64 seed);

/// Exact period of 0 under (z^2 + p0)/(z^2 + q0) over F_prime, or 0.
int critical_period(u64 p0, u64 q0, u64 prime, int max_steps);

/// P(2, 4c) as a polynomial in c.
IntPoly restrict_to_per1(const MPoly& pmodel);

struct RestrictionReport {
    bool ok = false;
    IntPoly restricted;
    IntPoly radical;
    IntPoly gleason;
    int multiplicity = 0;     ///< largest m with G_n^m dividing the restriction
    bool pure_power = false;  ///< restriction == const * G_n^m
};

/// Radical of P_n(2, 4c) equals G_n. Throws InvalidPeriod for n < 2.
RestrictionReport restriction_check(const CurveModel& m);

/// P_n(2, 4c) is neither zero nor a constant.
bool component_meets_per1(const CurveModel& m);

struct RationalPoint {
    Rat s1, s2;
};

/// Points with both coordinates of height <= H, sorted by height, then s1,
/// then s2. Every point is re-substituted exactly; a failure throws
/// InternalConsistency.
std::vector<RationalPoint> rational_point_search(const MPoly& curve, long height);

}  // namespace quadmod::pern
