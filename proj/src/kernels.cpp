#include "quadmod/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quadmod/modarith.hpp"

namespace quadmod::kernels {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = std::size_t{1} << 15;

inline u64 dot_mod(const u64* a, const u64* b, std::size_t n, u64 p, unsigned chunk) {
    u128 acc = 0;
    unsigned cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += static_cast<u128>(a[i]) * b[i];
        if (++cnt == chunk) {
            acc %= p;
            cnt = 1;
        }
    }
    return static_cast<u64>(acc % p);
}

// x * v mod f for monic f of degree n, v of length n (in place).
void shift_reduce(std::vector<u64>& v, const std::vector<u64>& f, u64 p) {
    const std::size_t n = v.size();
    const u64 top = v[n - 1];
    for (std::size_t k = n - 1; k > 0; --k) v[k] = v[k - 1];
    v[0] = 0;
    if (top == 0) return;
    const ShoupMul t(top, p);
    for (std::size_t k = 0; k < n; ++k) v[k] = sub_mod(v[k], t(f[k], p), p);
}

std::vector<u64> padded(const ModPoly& a, std::size_t n) {
    std::vector<u64> v(n, 0);
    const auto& c = a.coeffs();
    std::copy(c.begin(), c.end(), v.begin());
    return v;
}

int period_of(u64 p0, u64 q0, int max_steps, u64 p) {
    u64 x = 0, y = 1;
    for (int step = 1; step <= max_steps; ++step) {
        const u64 xx = mul_mod(x, x, p);
        const u64 yy = mul_mod(y, y, p);
        const u64 nx = add_mod(xx, mul_mod(p0, yy, p), p);
        const u64 ny = add_mod(xx, mul_mod(q0, yy, p), p);
        if (nx == 0 && ny == 0) return 0;
        if (nx == 0) return step;
        x = nx;
        y = ny;
    }
    return 0;
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void matvec_mod(std::span<const u64> a, std::size_t rows, std::size_t cols, std::span<const u64> x,
                std::span<u64> y, u64 p) {
    if (a.size() < rows * cols || x.size() < cols || y.size() < rows)
        throw std::invalid_argument("matvec_mod: dimension mismatch");
    const unsigned chunk = std::max(1u, lazy_chunk(p) - 1);
    const long nrows = static_cast<long>(rows);
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelWork)
    for (long r = 0; r < nrows; ++r)
        y[static_cast<std::size_t>(r)] = dot_mod(a.data() + static_cast<std::size_t>(r) * cols, x.data(), cols, p, chunk);
}

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p) {
    if (a.empty() || b.empty()) return {};
    const std::size_t na = a.size(), nb = b.size();
    std::vector<u64> out(na + nb - 1);
    // b reversed turns each output coefficient into a contiguous dot product
    std::vector<u64> rb(b.rbegin(), b.rend());
    const unsigned chunk = std::max(1u, lazy_chunk(p) - 1);
    const long nout = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 64) if (na * nb >= kParallelWork)
    for (long k = 0; k < nout; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        const std::size_t lo = kk + 1 >= nb ? kk + 1 - nb : 0;
        const std::size_t hi = std::min(kk, na - 1);
        // a[i] * b[k - i] = a[i] * rb[nb - 1 - k + i]
        out[kk] = dot_mod(a.data() + lo, rb.data() + (nb - 1 + lo - kk), hi - lo + 1, p, chunk);
    }
    return out;
}

std::vector<u64> frobenius_matrix_t(const ModPoly& f_in) {
    const ModPoly f = make_monic(f_in);
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const u64 p = f.modulus();
    if (n == 0) return {};
    const ModPoly g = x_powmod(Int(static_cast<unsigned long>(p)), f);

    // multiplication-by-g matrix: column i holds x^i g mod f
    std::vector<u64> mg(n * n);
    std::vector<u64> col = padded(g, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) mg[k * n + i] = col[k];
        if (i + 1 < n) shift_reduce(col, f.coeffs(), p);
    }

    std::vector<u64> rows(n * n, 0);  // row j = x^(j p) mod f
    rows[0] = 1 % p;
    for (std::size_t j = 1; j < n; ++j) {
        std::span<const u64> prev(rows.data() + (j - 1) * n, n);
        std::span<u64> cur(rows.data() + j * n, n);
        matvec_mod(mg, n, n, prev, cur, p);
    }
    std::vector<u64> qt(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) qt[k * n + j] = rows[j * n + k];
    return qt;
}

std::vector<int> critical_periods(std::span<const std::pair<u64, u64>> points, int max_steps, u64 p) {
    std::vector<int> out(points.size());
    const long m = static_cast<long>(points.size());
#pragma omp parallel for schedule(static) if (points.size() * static_cast<std::size_t>(max_steps) >= kParallelWork)
    for (long i = 0; i < m; ++i) {
        const auto& pt = points[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = period_of(pt.first, pt.second, max_steps, p);
    }
    return out;
}

namespace serial {

void matvec_mod(std::span<const u64> a, std::size_t rows, std::size_t cols, std::span<const u64> x,
                std::span<u64> y, u64 p) {
    if (a.size() < rows * cols || x.size() < cols || y.size() < rows)
        throw std::invalid_argument("matvec_mod: dimension mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
        u64 s = 0;
        for (std::size_t c = 0; c < cols; ++c) s = add_mod(s, mul_mod(a[r * cols + c], x[c], p), p);
        y[r] = s;
    }
}

std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
    return out;
}

std::vector<u64> frobenius_matrix_t(const ModPoly& f_in) {
    const ModPoly f = make_monic(f_in);
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const u64 p = f.modulus();
    if (n == 0) return {};
    const ModPoly g = x_powmod(Int(static_cast<unsigned long>(p)), f);
    std::vector<u64> qt(n * n, 0);
    ModPoly cur = ModPoly::constant(1, p);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) qt[k * n + j] = cur[k];
        auto prod = convolve_mod(cur.coeffs(), g.coeffs(), p);
        cur = rem(ModPoly::from_reduced(std::move(prod), p), f);
    }
    return qt;
}

std::vector<int> critical_periods(std::span<const std::pair<u64, u64>> points, int max_steps, u64 p) {
    std::vector<int> out;
    out.reserve(points.size());
    for (const auto& pt : points) out.push_back(period_of(pt.first, pt.second, max_steps, p));
    return out;
}

}  // namespace serial

}  // namespace quadmod::kernels
