#include "mpslab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "mpslab/errors.hpp"

namespace mpslab::kernels {

namespace detail {

// Implemented in kernels_avx2.cpp (compiled with AVX2 codegen).
void count_pairs_histogram_blocks_avx2(const double* points, std::size_t n, std::size_t m,
                                       std::size_t a0, std::size_t a1,
                                       std::size_t b0, std::size_t b1,
                                       const double* grid, std::size_t n_grid,
                                       std::uint64_t* bins);
PowerSums centered_power_sums_avx2(const double* x, std::size_t n, double center);
MinMaxCounts minmax_counts_avx2(const std::int64_t* x, std::size_t n);
MinMaxCountsF minmax_counts_f_avx2(const double* x, std::size_t n);
bool cpu_has_avx2();

// Index of the first grid element strictly greater than d, i.e. the number of
// radii the pair does NOT belong to.  bins[idx] is incremented; a prefix sum
// later turns bins into cumulative per-radius pair counts.
inline std::size_t upper_bound_idx(const double* grid, std::size_t n_grid, double d) {
    std::size_t lo = 0, hi = n_grid;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (grid[mid] <= d)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

inline double chebyshev(const double* a, const double* b, std::size_t m) {
    double d = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        double t = std::fabs(a[k] - b[k]);
        if (t > d) d = t;
    }
    return d;
}

void count_pairs_blocks_scalar(const double* points, std::size_t /*n*/, std::size_t m,
                               std::size_t a0, std::size_t a1,
                               std::size_t b0, std::size_t b1,
                               const double* grid, std::size_t n_grid,
                               std::uint64_t* bins) {
    const bool overlap = a0 == b0 && a1 == b1;
    for (std::size_t i = a0; i < a1; ++i) {
        const double* pi = points + i * m;
        std::size_t j0 = overlap ? i + 1 : b0;
        for (std::size_t j = j0; j < b1; ++j) {
            double d = chebyshev(pi, points + j * m, m);
            bins[upper_bound_idx(grid, n_grid, d)]++;
        }
    }
}

PowerSums centered_power_sums_scalar(const double* x, std::size_t n, double center) {
    // Fixed 4-stripe accumulation; the AVX2 variant maps stripe k to SIMD
    // lane k, so both orders of operation are identical.
    double s1[4] = {0, 0, 0, 0}, s2[4] = {0, 0, 0, 0};
    double s3[4] = {0, 0, 0, 0}, s4[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lane = i & 3;
        double d = x[i] - center;
        double d2 = d * d;
        double d3 = d2 * d;
        double d4 = d2 * d2;
        s1[lane] += d;
        s2[lane] += d2;
        s3[lane] += d3;
        s4[lane] += d4;
    }
    PowerSums out;
    out.s1 = (s1[0] + s1[1]) + (s1[2] + s1[3]);
    out.s2 = (s2[0] + s2[1]) + (s2[2] + s2[3]);
    out.s3 = (s3[0] + s3[1]) + (s3[2] + s3[3]);
    out.s4 = (s4[0] + s4[1]) + (s4[2] + s4[3]);
    return out;
}

MinMaxCounts minmax_counts_scalar(const std::int64_t* x, std::size_t n) {
    MinMaxCounts r;
    if (n == 0) return r;
    r.min = r.max = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] < r.min) r.min = x[i];
        if (x[i] > r.max) r.max = x[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.n_min += x[i] == r.min;
        r.n_max += x[i] == r.max;
    }
    return r;
}

MinMaxCountsF minmax_counts_f_scalar(const double* x, std::size_t n) {
    MinMaxCountsF r;
    if (n == 0) return r;
    r.min = r.max = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] < r.min) r.min = x[i];
        if (x[i] > r.max) r.max = x[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.n_min += x[i] == r.min;
        r.n_max += x[i] == r.max;
    }
    return r;
}

}  // namespace detail

namespace {

std::atomic<Backend> g_backend{Backend::Auto};

Backend resolved() {
    Backend b = g_backend.load(std::memory_order_relaxed);
    if (b != Backend::Auto) return b;
    return detail::cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !detail::cpu_has_avx2())
        throw BadParams("AVX2 backend requested but not available on this CPU");
    g_backend.store(b, std::memory_order_relaxed);
}

Backend active_backend() { return resolved(); }

std::string backend_name() {
    switch (resolved()) {
        case Backend::Avx2: return "avx2";
        case Backend::Scalar: return "scalar";
        default: return "auto";
    }
}

bool avx2_available() { return detail::cpu_has_avx2(); }

void count_pairs_histogram_blocks(const double* points, std::size_t n, std::size_t m,
                                  std::size_t a0, std::size_t a1,
                                  std::size_t b0, std::size_t b1,
                                  const double* grid, std::size_t n_grid,
                                  std::uint64_t* bins) {
    if (resolved() == Backend::Avx2)
        detail::count_pairs_histogram_blocks_avx2(points, n, m, a0, a1, b0, b1, grid,
                                                  n_grid, bins);
    else
        detail::count_pairs_blocks_scalar(points, n, m, a0, a1, b0, b1, grid, n_grid,
                                          bins);
}

void count_pairs_histogram(const double* points, std::size_t n, std::size_t m,
                           const double* grid, std::size_t n_grid, std::uint64_t* out) {
    std::vector<std::uint64_t> bins(n_grid + 1, 0);
    count_pairs_histogram_blocks(points, n, m, 0, n, 0, n, grid, n_grid, bins.data());
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < n_grid; ++j) {
        acc += bins[j];
        out[j] += acc;
    }
}

PowerSums centered_power_sums(const double* x, std::size_t n, double center) {
    if (resolved() == Backend::Avx2) return detail::centered_power_sums_avx2(x, n, center);
    return detail::centered_power_sums_scalar(x, n, center);
}

MinMaxCounts minmax_counts(const std::int64_t* x, std::size_t n) {
    if (resolved() == Backend::Avx2) return detail::minmax_counts_avx2(x, n);
    return detail::minmax_counts_scalar(x, n);
}

MinMaxCountsF minmax_counts(const double* x, std::size_t n) {
    if (resolved() == Backend::Avx2) return detail::minmax_counts_f_avx2(x, n);
    return detail::minmax_counts_f_scalar(x, n);
}

}  // namespace mpslab::kernels
