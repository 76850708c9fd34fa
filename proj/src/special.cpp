#include "mpslab/special.hpp"

#include <cmath>

#include "mpslab/errors.hpp"

namespace mpslab::distributions {
namespace {

// Lanczos coefficients for g = 7.
constexpr double kC[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr double kSqrtTwoPi = 2.506628274631000502;

double lanczos_series(double x) {
    double acc = kC[0];
    for (int i = 1; i < 9; ++i) acc += kC[i] / (x + i - 1.0);
    return acc;
}

// Core evaluation for x >= 0.5.
double gamma_upper(double x) {
    const double t = x + 6.5;
    return kSqrtTwoPi * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_series(x);
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
    if (x <= 0.0 && x == std::floor(x))
        throw DomainError("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // Reflection: Gamma(x) * Gamma(1-x) = pi / sin(pi x).
        return M_PI / (std::sin(M_PI * x) * gamma_upper(1.0 - x));
    }
    return gamma_upper(x);
}

double log_gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma_fn: requires x > 0");
    // Shift small arguments up; ln Gamma(x) = ln Gamma(x+1) - ln x.
    double shift = 0.0;
    while (x < 0.5) {
        shift -= std::log(x);
        x += 1.0;
    }
    const double t = x + 6.5;
    return std::log(kSqrtTwoPi) + (x - 0.5) * std::log(t) - t +
           std::log(lanczos_series(x)) + shift;
}

double beta_fn(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta_fn: requires p, q > 0");
    return std::exp(log_gamma_fn(p) + log_gamma_fn(q) - log_gamma_fn(p + q));
}

}  // namespace mpslab::distributions
