#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mpslab::increments {

// First four sample moments plus extremes.  std uses the n-1 divisor;
// skewness and excess kurtosis are the population moment ratios m3/m2^1.5
// and m4/m2^2 - 3.  Statistics that need more data than the sample has are
// flagged undefined rather than reported as 0 or NaN.
struct MomentSummary {
    std::size_t size = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    bool has_skewness = false;
    bool has_excess_kurtosis = false;
};

MomentSummary moments(std::span<const double> values);
MomentSummary moments(std::span<const std::int64_t> values);

struct EcdfStep {
    double value = 0.0;
    std::int64_t cum_count = 0;  // exact running count through this value
    double prob = 0.0;           // cum_count / n
};

// Repetition-adjusted steps: one per distinct value, last prob exactly 1.
struct Ecdf {
    std::vector<EcdfStep> steps;
    std::int64_t n = 0;
    double operator()(double x) const;  // P(X <= x)
};

struct EpdfBin {
    double value = 0.0;
    std::int64_t count = 0;
    double freq = 0.0;  // count / n
};

Ecdf ecdf(std::span<const double> values);
Ecdf ecdf(std::span<const std::int64_t> values);
std::vector<EpdfBin> epdf(std::span<const double> values);
std::vector<EpdfBin> epdf(std::span<const std::int64_t> values);

// "undefined" when the flag is off, else fixed-precision text.
std::string stat_or_undefined(double value, bool defined, int sig_digits = 6);

}  // namespace mpslab::increments
