#include "mpslab/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mpslab/errors.hpp"

namespace mpslab::distributions {
namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw BadParams(std::string(what) + " must be finite");
}

void validate(const WeibullParams& p) {
    require_finite(p.x_u, "x_u");
    require_finite(p.x_o, "x_o");
    require_finite(p.m, "m");
    if (p.x_o <= 0.0) throw BadParams("weibull scale x_o must be > 0");
    if (p.m <= 0.0) throw BadParams("weibull shape m must be > 0");
}

void validate(const KumaraswamyParams& p) {
    require_finite(p.a, "a");
    require_finite(p.b, "b");
    require_finite(p.z_min, "z_min");
    require_finite(p.z_max, "z_max");
    require_finite(p.F0, "F0");
    if (p.a <= 0.0) throw BadParams("kumaraswamy shape a must be > 0");
    if (p.b <= 0.0) throw BadParams("kumaraswamy shape b must be > 0");
    if (!(p.z_max > p.z_min)) throw BadParams("kumaraswamy needs z_max > z_min");
    if (p.F0 < 0.0 || p.F0 >= 1.0) throw BadParams("kumaraswamy F0 must be in [0, 1)");
}

void validate(const GammaParams& p) {
    require_finite(p.alpha, "alpha");
    require_finite(p.beta, "beta");
    if (p.alpha <= 0.0) throw BadParams("gamma shape alpha must be > 0");
    if (p.beta <= 0.0) throw BadParams("gamma rate beta must be > 0");
}

double binomial(int k, int j) {
    static constexpr double kTable[5][5] = {
        {1, 0, 0, 0, 0},
        {1, 1, 0, 0, 0},
        {1, 2, 1, 0, 0},
        {1, 3, 3, 1, 0},
        {1, 4, 6, 4, 1},
    };
    return kTable[k][j];
}

Moments4 central_from_raw(double a1, double a2, double a3, double a4) {
    const double mu2 = a2 - a1 * a1;
    const double mu3 = a3 - 3.0 * a1 * a2 + 2.0 * a1 * a1 * a1;
    const double mu4 = a4 - 4.0 * a1 * a3 + 6.0 * a1 * a1 * a2 - 3.0 * a1 * a1 * a1 * a1;
    Moments4 out;
    out.mean = a1;
    out.variance = mu2;
    if (mu2 > 0.0) {
        out.skewness = mu3 / std::pow(mu2, 1.5);
        out.excess_kurtosis = mu4 / (mu2 * mu2) - 3.0;
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------------ Weibull

double weibull_cdf(const WeibullParams& params, double x) {
    validate(params);
    if (!std::isfinite(x)) throw DomainError("weibull_cdf: x must be finite");
    if (x <= params.x_u) return 0.0;
    const double y = (x - params.x_u) / params.x_o;
    return 1.0 - std::exp(-std::pow(y, params.m));
}

double weibull_pdf(const WeibullParams& params, double x) {
    validate(params);
    if (!std::isfinite(x)) throw DomainError("weibull_pdf: x must be finite");
    if (x < params.x_u) return 0.0;
    const double y = (x - params.x_u) / params.x_o;
    if (y == 0.0) {
        if (params.m > 1.0) return 0.0;
        if (params.m == 1.0) return 1.0 / params.x_o;
        return std::numeric_limits<double>::infinity();
    }
    const double ym = std::pow(y, params.m);
    return params.m / params.x_o * std::pow(y, params.m - 1.0) * std::exp(-ym);
}

Moments4 weibull_moments(const WeibullParams& params) {
    validate(params);
    const double g1 = gamma_fn(1.0 + 1.0 / params.m);
    const double g2 = gamma_fn(1.0 + 2.0 / params.m);
    const double g3 = gamma_fn(1.0 + 3.0 / params.m);
    const double g4 = gamma_fn(1.0 + 4.0 / params.m);
    const double s = params.x_o;
    Moments4 out =
        central_from_raw(s * g1, s * s * g2, s * s * s * g3, s * s * s * s * g4);
    out.mean += params.x_u;
    return out;
}

// -------------------------------------------------------------- Kumaraswamy

double kumaraswamy_cdf(const KumaraswamyParams& params, double z) {
    validate(params);
    if (!std::isfinite(z)) throw DomainError("kumaraswamy_cdf: z must be finite");
    if (z < params.z_min) return 0.0;
    if (z == params.z_min) return params.F0;
    if (z >= params.z_max) return 1.0;
    const double y = (z - params.z_min) / (params.z_max - params.z_min);
    const double tail = std::pow(1.0 - std::pow(y, params.a), params.b);
    return params.F0 + (1.0 - params.F0) * (1.0 - tail);
}

double kumaraswamy_pdf(const KumaraswamyParams& params, double z) {
    validate(params);
    if (!std::isfinite(z)) throw DomainError("kumaraswamy_pdf: z must be finite");
    if (z < params.z_min || z > params.z_max) return 0.0;
    const double q = params.z_max - params.z_min;
    const double y = (z - params.z_min) / q;
    // std::pow edge semantics give the one-sided limits at y = 0 and y = 1.
    return (1.0 - params.F0) * params.a * params.b / q * std::pow(y, params.a - 1.0) *
           std::pow(1.0 - std::pow(y, params.a), params.b - 1.0);
}

double kumaraswamy_moments(const KumaraswamyParams& params, int k) {
    validate(params);
    if (k < 0 || k > 4) throw DomainError("kumaraswamy_moments: k must be in 0..4");
    const double q = params.z_max - params.z_min;
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double weight = binomial(k, j) * std::pow(params.z_min, double(k - j)) *
                              std::pow(q, double(j));
        sum += weight * params.b * beta_fn(1.0 + double(j) / params.a, params.b);
    }
    return std::pow(params.z_min, double(k)) * params.F0 + (1.0 - params.F0) * sum;
}

Moments4 kumaraswamy_summary(const KumaraswamyParams& params) {
    return central_from_raw(
        kumaraswamy_moments(params, 1), kumaraswamy_moments(params, 2),
        kumaraswamy_moments(params, 3), kumaraswamy_moments(params, 4));
}

// -------------------------------------------------------------------- Gamma

Moments4 gamma_moments(const GammaParams& params) {
    validate(params);
    Moments4 out;
    out.mean = params.alpha / params.beta;
    out.variance = params.alpha / (params.beta * params.beta);
    out.skewness = 2.0 / std::sqrt(params.alpha);
    out.excess_kurtosis = 6.0 / params.alpha;
    return out;
}

}  // namespace mpslab::distributions
