#include <array>
#include <cmath>
#include <vector>

#include "mpslab/distributions.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::distributions {
namespace {

// B_2j / (2j)! for j = 1..3.
constexpr double kCorrectionCoef[3] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};

void validate(const ExtremeType2Params& p) {
    if (!std::isfinite(p.k) || p.k <= 0.0)
        throw BadParams("extreme type 2: shape k must be > 0");
    if (!std::isfinite(p.b) || p.b <= 0.0)
        throw BadParams("extreme type 2: scale b must be > 0");
    if (!std::isfinite(p.a) || p.a < 0.0)
        throw BadParams("extreme type 2: shift a must be >= 0");
    if (p.M < 2) throw BadParams("extreme type 2: truncation M must be >= 2");
}

// Coefficients of P_n(u) where f^(n)(x) = (b/t)^n f(x) P_n(u), u = t^-k.
// P_0 = 1 and P_{n+1} = (ku - (k+1) - n) P_n - ku P_n'.
std::vector<double> derivative_poly(double k, int n) {
    std::vector<double> coef{1.0};
    for (int step = 0; step < n; ++step) {
        std::vector<double> next(coef.size() + 1, 0.0);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i + 1] += k * coef[i];
            next[i] += -(k + 1.0 + double(step)) * coef[i];
            next[i] += -k * double(i) * coef[i];
        }
        coef = std::move(next);
    }
    return coef;
}

double poly_eval(const std::vector<double>& coef, double u) {
    double acc = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * u + coef[i];
    return acc;
}

// f^(n) evaluated at x, for the shift-scale type-II density.
double frechet_pdf2_derivative(double k, double b, double a, double x, int n) {
    const double t = b * x + a;
    const double f = frechet_pdf2(k, b, a, x);
    if (n == 0) return f;
    const double u = std::pow(t, -k);
    return std::pow(b / t, double(n)) * f * poly_eval(derivative_poly(k, n), u);
}

double correction_term(const ExtremeType2Params& p, int j) {
    return kCorrectionCoef[j - 1] *
           frechet_pdf2_derivative(p.k, p.b, p.a, double(p.M), 2 * j - 1);
}

}  // namespace

double fisher_tippett_pdf(FisherTippettType type, double x, double k) {
    if (!std::isfinite(x)) throw DomainError("fisher_tippett_pdf: x must be finite");
    if (type == FisherTippettType::I) {
        return std::exp(-x - std::exp(-x));
    }
    if (!std::isfinite(k) || k <= 0.0)
        throw BadParams("fisher_tippett_pdf: shape k must be > 0");
    if (type == FisherTippettType::II) {
        if (x <= 0.0) throw DomainError("fisher_tippett_pdf: type II needs x > 0");
        return k * std::pow(x, -(k + 1.0)) * std::exp(-std::pow(x, -k));
    }
    if (x >= 0.0) throw DomainError("fisher_tippett_pdf: type III needs x < 0");
    return k * std::pow(-x, k - 1.0) * std::exp(-std::pow(-x, k));
}

double frechet_pdf2(double k, double b, double a, double x) {
    if (!std::isfinite(k) || k <= 0.0) throw BadParams("frechet_pdf2: k must be > 0");
    if (!std::isfinite(b) || b <= 0.0) throw BadParams("frechet_pdf2: b must be > 0");
    if (!std::isfinite(a) || a < 0.0) throw BadParams("frechet_pdf2: a must be >= 0");
    if (!std::isfinite(x)) throw DomainError("frechet_pdf2: x must be finite");
    const double t = b * x + a;
    if (t <= 0.0) return 0.0;
    return k * b * std::pow(t, -(k + 1.0)) * std::exp(-std::pow(t, -k));
}

double extreme_pmf2_denominator(const ExtremeType2Params& params) {
    validate(params);
    const double k = params.k;
    const double b = params.b;
    const double a = params.a;
    const double m = double(params.M);

    double head = 0.0;
    for (int n = params.M - 1; n >= 1; --n)
        head += frechet_pdf2(k, b, a, double(n));

    // Euler-Maclaurin for the tail sum_{n>=M} f(n): integral + f(M)/2
    // minus the Bernoulli derivative corrections.
    const double tm = b * m + a;
    const double em = std::exp(-std::pow(tm, -k));
    const double integral_and_half =
        1.0 - em * (1.0 - k * b / (2.0 * std::pow(tm, k + 1.0)));

    double corrections = 0.0;
    for (int j = 1; j <= 3; ++j) corrections += correction_term(params, j);

    return head + integral_and_half - corrections;
}

double extreme_pmf2_correction_term(const ExtremeType2Params& params, int j) {
    validate(params);
    if (j < 1 || j > 3)
        throw DomainError("extreme_pmf2_correction_term: j must be 1, 2 or 3");
    return correction_term(params, j);
}

double extreme_pmf2(const ExtremeType2Params& params, std::int64_t n) {
    validate(params);
    if (n < 0) throw DomainError("extreme_pmf2: n must be >= 0");
    if (n == 0) return 0.0;
    return frechet_pdf2(params.k, params.b, params.a, double(n)) /
           extreme_pmf2_denominator(params);
}

}  // namespace mpslab::distributions
