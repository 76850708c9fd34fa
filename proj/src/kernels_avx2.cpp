// AVX2 kernel variants.  This translation unit is the only one compiled with
// AVX2 codegen; everything here is reached through the runtime dispatch in
// kernels.cpp.  FP contraction is disabled for the whole target so the lane
// arithmetic matches the scalar stripes bit for bit.

#include <cstddef>
#include <cstdint>

#include "mpslab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MPSLAB_X86 1
#else
#define MPSLAB_X86 0
#endif

namespace mpslab::kernels::detail {

void count_pairs_blocks_scalar(const double* points, std::size_t n, std::size_t m,
                               std::size_t a0, std::size_t a1,
                               std::size_t b0, std::size_t b1,
                               const double* grid, std::size_t n_grid,
                               std::uint64_t* bins);
PowerSums centered_power_sums_scalar(const double* x, std::size_t n, double center);
MinMaxCounts minmax_counts_scalar(const std::int64_t* x, std::size_t n);
MinMaxCountsF minmax_counts_f_scalar(const double* x, std::size_t n);

bool cpu_has_avx2() {
#if MPSLAB_X86
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

#if MPSLAB_X86

namespace {

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

// Chebyshev distances of point i against points j..j+3 (row-major).
__attribute__((target("avx2"))) inline __m256d chebyshev4(const double* pi,
                                                          const double* pj,
                                                          std::size_t m,
                                                          std::size_t stride) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d dist = _mm256_setzero_pd();
    for (std::size_t k = 0; k < m; ++k) {
        __m256d a = _mm256_set1_pd(pi[k]);
        __m256d b = _mm256_set_pd(pj[3 * stride + k], pj[2 * stride + k],
                                  pj[1 * stride + k], pj[k]);
        __m256d t = _mm256_and_pd(_mm256_sub_pd(a, b), absmask);
        dist = _mm256_max_pd(dist, t);
    }
    return dist;
}

}  // namespace

__attribute__((target("avx2")))
void count_pairs_histogram_blocks_avx2(const double* points, std::size_t n, std::size_t m,
                                       std::size_t a0, std::size_t a1,
                                       std::size_t b0, std::size_t b1,
                                       const double* grid, std::size_t n_grid,
                                       std::uint64_t* bins) {
    const bool overlap = a0 == b0 && a1 == b1;
    alignas(32) double d4[4];
    for (std::size_t i = a0; i < a1; ++i) {
        const double* pi = points + i * m;
        std::size_t j = overlap ? i + 1 : b0;
        if (n_grid == 1) {
            // Single-radius fast path used by the box-assisted counter.
            const __m256d r = _mm256_set1_pd(grid[0]);
            std::uint64_t inside = 0, total = 0;
            for (; j + 4 <= b1; j += 4) {
                __m256d dist = chebyshev4(pi, points + j * m, m, m);
                __m256d lt = _mm256_cmp_pd(dist, r, _CMP_LT_OQ);
                inside += static_cast<unsigned>(__builtin_popcount(_mm256_movemask_pd(lt)));
                total += 4;
            }
            for (; j < b1; ++j) {
                double d = 0.0;
                const double* pj = points + j * m;
                for (std::size_t k = 0; k < m; ++k) {
                    double t = pi[k] - pj[k];
                    t = t < 0 ? -t : t;
                    if (t > d) d = t;
                }
                inside += d < grid[0];
                ++total;
            }
            bins[0] += inside;
            bins[1] += total - inside;
            continue;
        }
        for (; j + 4 <= b1; j += 4) {
            __m256d dist = chebyshev4(pi, points + j * m, m, m);
            _mm256_store_pd(d4, dist);
            bins[upper_bound_idx(grid, n_grid, d4[0])]++;
            bins[upper_bound_idx(grid, n_grid, d4[1])]++;
            bins[upper_bound_idx(grid, n_grid, d4[2])]++;
            bins[upper_bound_idx(grid, n_grid, d4[3])]++;
        }
        for (; j < b1; ++j) {
            double d = 0.0;
            const double* pj = points + j * m;
            for (std::size_t k = 0; k < m; ++k) {
                double t = pi[k] - pj[k];
                t = t < 0 ? -t : t;
                if (t > d) d = t;
            }
            bins[upper_bound_idx(grid, n_grid, d)]++;
        }
    }
    (void)n;
}

__attribute__((target("avx2")))
PowerSums centered_power_sums_avx2(const double* x, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    __m256d s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd(), s4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        __m256d d2 = _mm256_mul_pd(d, d);
        __m256d d3 = _mm256_mul_pd(d2, d);
        __m256d d4 = _mm256_mul_pd(d2, d2);
        s1 = _mm256_add_pd(s1, d);
        s2 = _mm256_add_pd(s2, d2);
        s3 = _mm256_add_pd(s3, d3);
        s4 = _mm256_add_pd(s4, d4);
    }
    alignas(32) double l1[4], l2[4], l3[4], l4[4];
    _mm256_store_pd(l1, s1);
    _mm256_store_pd(l2, s2);
    _mm256_store_pd(l3, s3);
    _mm256_store_pd(l4, s4);
    // Tail elements continue their stripe, exactly like the scalar loop.
    for (; i < n; ++i) {
        std::size_t lane = i & 3;
        double d = x[i] - center;
        double d2 = d * d;
        double d3 = d2 * d;
        double d4 = d2 * d2;
        l1[lane] += d;
        l2[lane] += d2;
        l3[lane] += d3;
        l4[lane] += d4;
    }
    PowerSums out;
    out.s1 = (l1[0] + l1[1]) + (l1[2] + l1[3]);
    out.s2 = (l2[0] + l2[1]) + (l2[2] + l2[3]);
    out.s3 = (l3[0] + l3[1]) + (l3[2] + l3[3]);
    out.s4 = (l4[0] + l4[1]) + (l4[2] + l4[3]);
    return out;
}

__attribute__((target("avx2")))
MinMaxCounts minmax_counts_avx2(const std::int64_t* x, std::size_t n) {
    MinMaxCounts r;
    if (n == 0) return r;
    std::int64_t mn = x[0], mx = x[0];
    std::size_t i = 1;
    if (n >= 5) {
        __m256i vmin = _mm256_set1_epi64x(x[0]);
        __m256i vmax = vmin;
        for (i = 1; i + 4 <= n; i += 4) {
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
            __m256i gt_min = _mm256_cmpgt_epi64(vmin, v);
            vmin = _mm256_blendv_epi8(vmin, v, gt_min);
            __m256i gt_max = _mm256_cmpgt_epi64(v, vmax);
            vmax = _mm256_blendv_epi8(vmax, v, gt_max);
        }
        alignas(32) std::int64_t lmin[4], lmax[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lmin), vmin);
        _mm256_store_si256(reinterpret_cast<__m256i*>(lmax), vmax);
        for (int k = 0; k < 4; ++k) {
            if (lmin[k] < mn) mn = lmin[k];
            if (lmax[k] > mx) mx = lmax[k];
        }
    }
    for (; i < n; ++i) {
        if (x[i] < mn) mn = x[i];
        if (x[i] > mx) mx = x[i];
    }
    r.min = mn;
    r.max = mx;
    const __m256i vmn = _mm256_set1_epi64x(mn);
    const __m256i vmx = _mm256_set1_epi64x(mx);
    std::size_t c_min = 0, c_max = 0;
    i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        c_min += static_cast<unsigned>(__builtin_popcount(
            _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(v, vmn)))));
        c_max += static_cast<unsigned>(__builtin_popcount(
            _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(v, vmx)))));
    }
    for (; i < n; ++i) {
        c_min += x[i] == mn;
        c_max += x[i] == mx;
    }
    r.n_min = c_min;
    r.n_max = c_max;
    return r;
}

__attribute__((target("avx2")))
MinMaxCountsF minmax_counts_f_avx2(const double* x, std::size_t n) {
    MinMaxCountsF r;
    if (n == 0) return r;
    double mn = x[0], mx = x[0];
    std::size_t i = 1;
    if (n >= 5) {
        __m256d vmin = _mm256_set1_pd(x[0]);
        __m256d vmax = vmin;
        for (i = 1; i + 4 <= n; i += 4) {
            __m256d v = _mm256_loadu_pd(x + i);
            vmin = _mm256_min_pd(vmin, v);
            vmax = _mm256_max_pd(vmax, v);
        }
        alignas(32) double lmin[4], lmax[4];
        _mm256_store_pd(lmin, vmin);
        _mm256_store_pd(lmax, vmax);
        for (int k = 0; k < 4; ++k) {
            if (lmin[k] < mn) mn = lmin[k];
            if (lmax[k] > mx) mx = lmax[k];
        }
    }
    for (; i < n; ++i) {
        if (x[i] < mn) mn = x[i];
        if (x[i] > mx) mx = x[i];
    }
    r.min = mn;
    r.max = mx;
    const __m256d vmn = _mm256_set1_pd(mn);
    const __m256d vmx = _mm256_set1_pd(mx);
    std::size_t c_min = 0, c_max = 0;
    i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        c_min += static_cast<unsigned>(
            __builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(v, vmn, _CMP_EQ_OQ))));
        c_max += static_cast<unsigned>(
            __builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(v, vmx, _CMP_EQ_OQ))));
    }
    for (; i < n; ++i) {
        c_min += x[i] == mn;
        c_max += x[i] == mx;
    }
    r.n_min = c_min;
    r.n_max = c_max;
    return r;
}

#else  // !MPSLAB_X86

void count_pairs_histogram_blocks_avx2(const double* points, std::size_t n, std::size_t m,
                                       std::size_t a0, std::size_t a1,
                                       std::size_t b0, std::size_t b1,
                                       const double* grid, std::size_t n_grid,
                                       std::uint64_t* bins) {
    count_pairs_blocks_scalar(points, n, m, a0, a1, b0, b1, grid, n_grid, bins);
}

PowerSums centered_power_sums_avx2(const double* x, std::size_t n, double center) {
    return centered_power_sums_scalar(x, n, center);
}

MinMaxCounts minmax_counts_avx2(const std::int64_t* x, std::size_t n) {
    return minmax_counts_scalar(x, n);
}

MinMaxCountsF minmax_counts_f_avx2(const double* x, std::size_t n) {
    return minmax_counts_f_scalar(x, n);
}

#endif

}  // namespace mpslab::kernels::detail
