#pragma once

// Hot inner loops over word-sized prime fields. Each kernel has an OpenMP
// version (used by the library) and a plain serial version in
// quadmod::kernels::serial, kept as the reference the tests and the
// benchmark compare against.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "quadmod/bigint.hpp"
#include "quadmod/modpoly.hpp"

namespace quadmod::kernels {

/// y = A x over F_p, A row-major with `rows` x `cols` entries.
void matvec_mod(std::span<const u64> a, std::size_t rows, std::size_t cols, std::span<const u64> x,
                std::span<u64> y, u64 p);

/// Coefficient vector (length deg f) of a*b mod p before reduction by any
/// modulus; result has length |a| + |b| - 1.
std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p);

/// Transposed Frobenius matrix of monic f of degree n: entry (k, j) is the
/// coefficient of x^k in x^(j p) mod f. Row-major n x n.
std::vector<u64> frobenius_matrix_t(const ModPoly& f);

/// For each (p0, q0), the exact period of the critical point 0 under
/// z -> (z^2 + p0) / (z^2 + q0) on P^1(F_p), or 0 when 0 does not return
/// within max_steps or the orbit degenerates.
std::vector<int> critical_periods(std::span<const std::pair<u64, u64>> points, int max_steps, u64 p);

namespace serial {

void matvec_mod(std::span<const u64> a, std::size_t rows, std::size_t cols, std::span<const u64> x,
                std::span<u64> y, u64 p);

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p);

/// Built row by row from products x^((j-1)p) * x^p mod f.
std::vector<u64> frobenius_matrix_t(const ModPoly& f);

std::vector<int> critical_periods(std::span<const std::pair<u64, u64>> points, int max_steps, u64 p);

}  // namespace serial

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace quadmod::kernels
