#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpslab/moments.hpp"
#include "mpslab/special.hpp"

namespace mpslab::distributions {

// ----------------------------------------------------------------- families

struct WeibullParams {
    double x_u = 0.0;  // location
    double x_o = 1.0;  // scale, > 0
    double m = 1.0;    // shape, > 0
};

struct KumaraswamyParams {
    double a = 1.0;      // shape, > 0
    double b = 1.0;      // shape, > 0
    double z_min = 0.0;  // support lower bound, carries the point mass F0
    double z_max = 1.0;  // support upper bound, > z_min
    double F0 = 0.0;     // point mass at z_min, in [0, 1)
};

struct GammaParams {
    double alpha = 1.0;  // shape, > 0
    double beta = 1.0;   // rate, > 0
};

// S > 1 always.  Q absent selects the Riemann family (ranks k >= 1); Q
// present the Hurwitz family (ranks k >= 0).  N bounds the support to
// ranks 1..N (Zipf-Mandelbrot; absent Q then defaults to 0, plain Zipf).
struct ZetaParams {
    double S = 2.0;
    std::optional<double> Q;
    std::optional<std::int64_t> N;
};

struct ExtremeType2Params {
    double k = 1.0;  // shape, > 0
    double b = 1.0;  // scale, > 0
    double a = 0.0;  // shift, >= 0
    int M = 200;     // denominator truncation index, >= 2
};

struct Moments4 {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

// ------------------------------------------------------------------ Weibull

// CDF/PDF are 0 below x_u.  Throws BadParams on invalid parameters.
double weibull_cdf(const WeibullParams& params, double x);
double weibull_pdf(const WeibullParams& params, double x);

// Central-moment summary via Gamma(1 + k/m); skewness and excess kurtosis
// depend on m only.
Moments4 weibull_moments(const WeibullParams& params);

// -------------------------------------------------------------- Kumaraswamy

// CDF jumps to F0 at z_min, reaches 1 at z_max; PDF is the continuous
// density scaled by 1-F0 (the point mass is not part of the density).
double kumaraswamy_cdf(const KumaraswamyParams& params, double z);
double kumaraswamy_pdf(const KumaraswamyParams& params, double z);

// Raw k-th moment, 0 <= k <= 4: alpha_k = z_min^k F0 +
// (1-F0) sum_j C(k,j) z_min^(k-j) Q^j b B(1+j/a, b), Q = z_max - z_min.
double kumaraswamy_moments(const KumaraswamyParams& params, int k);

// Central summary derived from the first four raw moments.
Moments4 kumaraswamy_summary(const KumaraswamyParams& params);

// -------------------------------------------------------------------- Gamma

// mean a/b, variance a/b^2, skewness 2/sqrt(a), excess kurtosis 6/a.
Moments4 gamma_moments(const GammaParams& params);

// --------------------------------------------------------------------- zeta

// Euler-Maclaurin evaluation: 20 direct terms, Bernoulli corrections
// through B26.  Requires S >= 1.001 and Q >= 0.001 (DomainError).
double hurwitz_zeta(double S, double Q);
double riemann_zeta(double S);

// Rank probability for the family selected by the parameters; ranks
// outside the family domain raise RankOutOfDomain.
double zeta_pmf(const ZetaParams& params, std::int64_t rank);

// ------------------------------------------------------------ extreme value

enum class FisherTippettType { I, II, III };

// Standardized extreme-value densities: I everywhere, II on x > 0,
// III on x < 0; arguments outside the support raise DomainError.
double fisher_tippett_pdf(FisherTippettType type, double x, double k);

// Shift-scale type-II density k b (bx+a)^-(k+1) exp(-(bx+a)^-k) on
// x > -a/b; a = 0 recovers the two-parameter form.
double frechet_pdf2(double k, double b, double a, double x);

// Discrete PMF on n >= 1 normalized by the Euler-Maclaurin series value
// of the denominator; PMF(0) = 0 by construction.
double extreme_pmf2(const ExtremeType2Params& params, std::int64_t n);
double extreme_pmf2_denominator(const ExtremeType2Params& params);

// Bernoulli correction term j (1, 2 or 3): B_2j/(2j)! * f^(2j-1)(M),
// exposed because the three values are part of the reported output.
double extreme_pmf2_correction_term(const ExtremeType2Params& params, int j);

// ------------------------------------------------------------------ fitting

struct KumaraswamyFit {
    KumaraswamyParams params;   // z_min = 0, F0 = 0
    double shape_error = 0.0;   // stage 1: |rel skew err| + |rel ek err|
    double scale_error = 0.0;   // stage 2: |rel mean err| + |rel std err|
    std::int64_t evaluations = 0;
};

// Two-stage moment fit: (a, b) against skewness/excess kurtosis, then
// z_max against mean/std with the shapes frozen.  Requires defined
// skewness and excess kurtosis and positive std in the target.
KumaraswamyFit fit_kumaraswamy_moments(const increments::MomentSummary& target);

enum class Chi2Family { Riemann, Hurwitz, ZipfMandelbrot, ExtremeType2 };

// One goodness-of-fit class covering the integer ranks lo..hi inclusive.
struct Chi2Class {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t count = 0;
};

struct ParamBounds {
    double lo = 0.0;
    double hi = 0.0;
};

struct Chi2Fit {
    Chi2Family family = Chi2Family::Hurwitz;
    std::vector<double> params;    // family order: (S[,Q]) or (k, b[, a])
    double chi2 = 0.0;
    std::int64_t dof = 0;          // classes - 1 - fitted params
    double prob_sum = 0.0;         // sum of class probabilities, as-is
    std::vector<double> expected;  // N * p per class
    std::int64_t evaluations = 0;
};

// Derivative-free chi^2 minimization over the boxed parameters.  The box
// length selects how many parameters are free (Hurwitz: 1 -> Riemann-like
// S only is invalid, pass 2 for (S, Q); ExtremeType2: 2 for (k, b) with
// a = 0, 3 to free a as well).  Zipf-Mandelbrot takes N from the largest
// class bound.
Chi2Fit fit_chi2(Chi2Family family, std::span<const Chi2Class> classes,
                 std::span<const ParamBounds> box);

// Evaluation without fitting: chi^2 of fixed parameters on the classes.
Chi2Fit eval_chi2(Chi2Family family, std::span<const Chi2Class> classes,
                  std::span<const double> params);

// Two-block CSV: `family,params,chi2,dof,prob_sum` header plus one row,
// then `lo,hi,observed,expected,contribution` per class.
std::string fit_report_csv(const Chi2Fit& fit, std::span<const Chi2Class> classes);

std::string family_name(Chi2Family family);

}  // namespace mpslab::distributions
