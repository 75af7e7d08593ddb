#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "quadmod/intpoly.hpp"

namespace quadmod {

/// Default cap on n for f_c^n(0), whose degree is 2^(n-1).
inline constexpr int kDefaultMaxPeriod = 16;

/// f_c^n(0) as a polynomial in c, iterating g -> g^2 + c from g = 0.
/// Throws ResourceLimit when n > max_n, std::invalid_argument when n < 1.
IntPoly crit_orbit(int n, int max_n = kDefaultMaxPeriod);

/// deg G_n from the recursion d(n) = 2^(n-1) - sum over proper divisors.
long gleason_degree(int n);

/// Proper positive divisors of n, ascending.
std::vector<int> proper_divisors(int n);

/// Memo table for G_n and f_c^n(0). Thread safe; computations for different n
/// share the table under one lock.
class GleasonTable {
public:
    explicit GleasonTable(int max_n = kDefaultMaxPeriod) : max_n_(max_n) {}

    /// G_n = f_c^n(0) / prod_{d | n, d < n} G_d, every division checked exact.
    IntPoly gleason(int n);
    IntPoly orbit(int n);

    /// Insert a value loaded from elsewhere (e.g. a cache). It is trusted.
    void seed(int n, IntPoly g);
    bool has(int n) const;
    int max_n() const { return max_n_; }

private:
    IntPoly gleason_locked(int n);
    IntPoly orbit_locked(int n);

    int max_n_;
    mutable std::recursive_mutex mu_;
    std::map<int, IntPoly> g_;
    std::map<int, IntPoly> orbit_;
};

/// G_n from a process-wide table.
IntPoly gleason(int n);
GleasonTable& default_gleason_table();

struct ProductReport {
    bool ok = false;
    long product_degree = 0;
    long orbit_degree = 0;
};

/// prod_{d | n} G_d == f_c^n(0) exactly.
ProductReport verify_product_identity(int n, GleasonTable& table = default_gleason_table());

struct SeparabilityReport {
    bool ok = false;
    bool squarefree = false;
    std::vector<int> shares_factor_with;  ///< requested m with gcd(G_m, G_n) != 1
};

/// gcd(G_n, G_n') == 1 and gcd(G_m, G_n) == 1 for each requested m.
SeparabilityReport verify_separability(int n, const std::vector<int>& others = {},
                                       GleasonTable& table = default_gleason_table());

}  // namespace quadmod
