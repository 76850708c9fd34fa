#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mpslab::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Selects the implementation used by the kernels below.  Auto picks the best
// available at first use; Scalar/Avx2 force one (Avx2 throws BadParams when
// the CPU lacks it).  Intended for equivalence tests and benchmarking.
void force_backend(Backend b);
Backend active_backend();
std::string backend_name();
bool avx2_available();

// Pairwise Chebyshev distances of n m-dimensional points (row-major, n*m
// doubles) binned against an ascending radius grid.  out[j] accumulates the
// number of unordered pairs with distance < grid[j] (strict).  The scalar and
// AVX2 variants produce identical counts for identical inputs.
void count_pairs_histogram(const double* points, std::size_t n, std::size_t m,
                           const double* grid, std::size_t n_grid,
                           std::uint64_t* out);

// Distance histogram restricted to pairs (i in [a0,a1), j in [b0,b1)) of the
// same point set, j > i enforced when the blocks overlap.  Building block for
// the box-assisted pair counter.
void count_pairs_histogram_blocks(const double* points, std::size_t n, std::size_t m,
                                  std::size_t a0, std::size_t a1,
                                  std::size_t b0, std::size_t b1,
                                  const double* grid, std::size_t n_grid,
                                  std::uint64_t* out);

// Sums of (x_i - center)^k for k = 1..4 in one pass.  Both backends use the
// same fixed 4-stripe accumulation order, so results are bit-identical and
// deterministic regardless of backend (the translation unit is compiled with
// FP contraction off).
struct PowerSums {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
};
PowerSums centered_power_sums(const double* x, std::size_t n, double center);

// Min/max of an integer sample with occurrence counts.
struct MinMaxCounts {
    std::int64_t min = 0, max = 0;
    std::size_t n_min = 0, n_max = 0;
};
MinMaxCounts minmax_counts(const std::int64_t* x, std::size_t n);

// Same for a double sample; the input must be free of NaNs.
struct MinMaxCountsF {
    double min = 0, max = 0;
    std::size_t n_min = 0, n_max = 0;
};
MinMaxCountsF minmax_counts(const double* x, std::size_t n);

}  // namespace mpslab::kernels
