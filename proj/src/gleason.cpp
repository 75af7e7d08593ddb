#include "quadmod/gleason.hpp"

#include <stdexcept>
#include <string>

#include "quadmod/errors.hpp"

namespace quadmod {

namespace {

void check_period(int n, int max_n) {
    if (n < 1) throw std::invalid_argument("period must be positive, got " + std::to_string(n));
    if (n > max_n)
        throw ResourceLimit("period " + std::to_string(n) + " exceeds the degree budget (max " + std::to_string(max_n) +
                            ")");
}

IntPoly iterate(IntPoly g) { return poly_sqr(g) + IntPoly::variable("c"); }

}  // namespace

IntPoly crit_orbit(int n, int max_n) {
    check_period(n, max_n);
    IntPoly g = IntPoly::variable("c");
    for (int k = 1; k < n; ++k) g = iterate(std::move(g));
    return g;
}

std::vector<int> proper_divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

long gleason_degree(int n) {
    if (n < 1 || n > 62) throw std::invalid_argument("gleason_degree: period out of range");
    long d = 1L << (n - 1);
    for (int k : proper_divisors(n)) d -= gleason_degree(k);
    return d;
}

IntPoly GleasonTable::orbit(int n) {
    std::lock_guard lock(mu_);
    return orbit_locked(n);
}

IntPoly GleasonTable::orbit_locked(int n) {
    check_period(n, max_n_);
    if (auto it = orbit_.find(n); it != orbit_.end()) return it->second;
    IntPoly g = n == 1 ? IntPoly::variable("c") : iterate(orbit_locked(n - 1));
    orbit_.emplace(n, g);
    return g;
}

IntPoly GleasonTable::gleason(int n) {
    std::lock_guard lock(mu_);
    return gleason_locked(n);
}

IntPoly GleasonTable::gleason_locked(int n) {
    check_period(n, max_n_);
    if (auto it = g_.find(n); it != g_.end()) return it->second;
    IntPoly q = orbit_locked(n);
    for (int d : proper_divisors(n)) {
        try {
            q = poly_divrem_exact(q, gleason_locked(d));
        } catch (const NonExactDivision& e) {
            throw InternalConsistency("G_" + std::to_string(d) + " does not divide the period-" + std::to_string(n) +
                                      " quotient: " + e.what());
        }
    }
    g_.emplace(n, q);
    return q;
}

void GleasonTable::seed(int n, IntPoly g) {
    std::lock_guard lock(mu_);
    g_[n] = std::move(g);
}

bool GleasonTable::has(int n) const {
    std::lock_guard lock(mu_);
    return g_.count(n) != 0;
}

GleasonTable& default_gleason_table() {
    static GleasonTable table;
    return table;
}

IntPoly gleason(int n) { return default_gleason_table().gleason(n); }

ProductReport verify_product_identity(int n, GleasonTable& table) {
    ProductReport r;
    IntPoly prod = IntPoly::constant(1, "c");
    for (int d : proper_divisors(n)) prod = prod * table.gleason(d);
    prod = prod * table.gleason(n);
    IntPoly orb = table.orbit(n);
    r.product_degree = prod.degree();
    r.orbit_degree = orb.degree();
    r.ok = (prod == orb);
    return r;
}

SeparabilityReport verify_separability(int n, const std::vector<int>& others, GleasonTable& table) {
    SeparabilityReport r;
    const IntPoly g = table.gleason(n);
    r.squarefree = is_squarefree(g);
    for (int m : others) {
        if (m == n) continue;
        if (!coprime(table.gleason(m), g)) r.shares_factor_with.push_back(m);
    }
    r.ok = r.squarefree && r.shares_factor_with.empty();
    return r;
}

}  // namespace quadmod
