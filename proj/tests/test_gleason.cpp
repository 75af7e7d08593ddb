#include <doctest.h>

#include "quadmod/errors.hpp"
#include "quadmod/gleason.hpp"
#include "quadmod/modarith.hpp"
#include "quadmod/modpoly.hpp"

using namespace quadmod;

TEST_SUITE("gleason") {

TEST_CASE("critical orbit") {
    CHECK(crit_orbit(1) == IntPoly{0, 1});
    CHECK(crit_orbit(2) == IntPoly{0, 1, 1});
    CHECK(crit_orbit(3) == IntPoly{0, 1, 1, 2, 1});
}

TEST_CASE("Gleason polynomials") {
    CHECK(gleason(1) == IntPoly{0, 1});
    CHECK(gleason(2) == IntPoly{1, 1});
    CHECK(gleason(3) == IntPoly{1, 1, 2, 1});
    CHECK(gleason(12).degree() == 2010);
    const long expected[] = {1, 1, 3, 6, 15, 27, 63, 120, 252, 495, 1023, 2010};
    for (int n = 1; n <= 12; ++n) CHECK(gleason_degree(n) == expected[n - 1]);
}

TEST_CASE("divisors") {
    CHECK(proper_divisors(1).empty());
    CHECK(proper_divisors(12) == std::vector<int>{1, 2, 3, 4, 6});
}

TEST_CASE("product identity") {
    for (int n : {1, 2, 6, 8}) {
        const auto r = verify_product_identity(n);
        CHECK(r.ok);
        CHECK(r.product_degree == r.orbit_degree);
        CHECK(r.orbit_degree == (1L << (n - 1)));
    }
}

TEST_CASE("separability") {
    CHECK(verify_separability(1).ok);
    const auto r = verify_separability(3, {1, 2});
    CHECK(r.ok);
    CHECK(r.squarefree);
    CHECK(r.shares_factor_with.empty());
    CHECK(verify_separability(6, {1, 2, 3, 4, 5}).ok);
}

TEST_CASE("period bound") {
    CHECK_THROWS_AS(GleasonTable(4).gleason(5), ResourceLimit);
    CHECK_THROWS(gleason(0));
}

TEST_CASE("roots of G_n have exact period n mod p") {
    // Every root c of G_n mod a large prime is a parameter where 0 has exact period n.
    for (int n = 1; n <= 6; ++n) {
        const u64 p = random_prime(40, static_cast<u64>(n));
        for (u64 c : roots(mod_reduce(gleason(n), p))) {
            u64 z = 0;
            int period = 0;
            for (int k = 1; k <= n; ++k) {
                z = add_mod(mul_mod(z, z, p), c, p);
                if (z == 0) {
                    period = k;
                    break;
                }
            }
            CHECK(period == n);
        }
    }
}

}
