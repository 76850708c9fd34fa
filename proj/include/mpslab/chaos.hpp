#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mpslab::chaos {

// 64-bit linear congruential generator (Knuth's MMIX multiplier).  The
// stream is fully determined by the seed, so simulated series are
// reproducible byte for byte across platforms.
class Lcg64 {
public:
    static constexpr std::uint64_t kDefaultSeed = 21325476;

    explicit Lcg64(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // Uniform draw in (0, 1]; never returns 0, so it is safe under log.
    double next_unit() {
        return (double((next_u64() >> 11)) + 1.0) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// One standard normal per call, consuming exactly two uniforms.
double box_muller(Lcg64& rng);

// Equidistant real-valued series (prices are off-lattice by design).
struct RealSeries {
    std::vector<std::int64_t> times_s;
    std::vector<double> prices;
};

// Arithmetic Brownian walk: p[0] = p1, p[i] = p[i-1] + drift + sigma * z.
// times_s[i] = (int64)(time_scale * i).  Throws BadParams for n < 2,
// sigma < 0 or time_scale <= 0.
RealSeries simulate_bachelier(double p1, double drift, double sigma,
                              std::size_t n, double time_scale,
                              std::uint64_t seed = Lcg64::kDefaultSeed);

// Non-overlapping m-chunks of a scalar series: point i is
// (x[im], ..., x[im+m-1]), floor(len/m) points in series order.
struct EmbeddedPoints {
    std::vector<double> data;  // row-major n x m
    std::size_t n = 0;
    std::size_t m = 0;

    const double* row(std::size_t i) const { return data.data() + i * m; }
};

EmbeddedPoints embed(std::span<const double> series, std::size_t m);

struct EmbeddingConfig {
    std::size_t m = 2;
    std::vector<double> r_grid;  // ascending positive radii
};

enum class PairAlgorithm { Naive, Boxed };

struct CurvePoint {
    double r = 0.0;
    double c = 0.0;           // C(r) = 2 pairs / (N (N-1))
    std::uint64_t pairs = 0;  // unordered pairs with distance < r (strict)
};

struct CorrelationCurve {
    std::vector<CurvePoint> points;
    std::size_t n_points = 0;  // embedded points the counts refer to
};

// Correlation integral over the radius grid using Chebyshev distance.
// Both algorithms produce identical counts; Boxed sorts points into
// cells of side ~r and only scans neighboring cells.
CorrelationCurve correlation_integral(const EmbeddedPoints& points,
                                      const EmbeddingConfig& config,
                                      PairAlgorithm algorithm);

// Geometric grid from the smallest nonzero pairwise distance to the
// largest (inclusive).  O(n^2) scan intended for modest point counts.
// Throws DegenerateCurve when all points coincide.
std::vector<double> default_r_grid(const EmbeddedPoints& points,
                                   std::size_t count = 40);

struct DimensionEstimate {
    double nu = 0.0;
    std::size_t first = 0;  // index range of the winning window
    std::size_t last = 0;   // (inclusive) into the filtered curve
    double r_lo = 0.0;
    double r_hi = 0.0;
};

// Maximum slope of ln C against ln r over sliding windows of the given
// length, after dropping points with C == 0 or C == 1.  A curve that is
// saturated everywhere (all C == 1) estimates dimension 0.
DimensionEstimate estimate_dimension(const CorrelationCurve& curve,
                                     std::size_t window = 5);

// `ln_r,ln_C` rows, one per curve point with C > 0.
std::string curve_lnln_text(const CorrelationCurve& curve);

}  // namespace mpslab::chaos
