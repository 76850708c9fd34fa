#include <cmath>

#include "mpslab/distributions.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::distributions {
namespace {

constexpr int kDirectTerms = 20;
constexpr int kCorrectionTerms = 13;

// B_2 .. B_26 as exact rational quotients.
constexpr double kBernoulli[kCorrectionTerms] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
};

}  // namespace

double hurwitz_zeta(double S, double Q) {
    if (!std::isfinite(S) || S < 1.001)
        throw DomainError("hurwitz_zeta: S must be >= 1.001");
    if (!std::isfinite(Q) || Q < 0.001)
        throw DomainError("hurwitz_zeta: Q must be >= 0.001");

    double sum = 0.0;
    for (int i = 0; i < kDirectTerms; ++i) sum += std::pow(double(i) + Q, -S);

    const double nq = double(kDirectTerms) + Q;
    sum += std::pow(nq, 1.0 - S) / (S - 1.0);
    sum += 0.5 * std::pow(nq, -S);

    // Tail corrections B_2k/(2k)! * nq^(1-S-2k) * prod_{j=0}^{2k-2} (S+j).
    double prod = S;
    double fact = 2.0;
    double power = std::pow(nq, -S - 1.0);
    const double inv_nq2 = 1.0 / (nq * nq);
    for (int k = 1; k <= kCorrectionTerms; ++k) {
        sum += kBernoulli[k - 1] / fact * power * prod;
        prod *= (S + double(2 * k - 1)) * (S + double(2 * k));
        fact *= double(2 * k + 1) * double(2 * k + 2);
        power *= inv_nq2;
    }
    return sum;
}

double riemann_zeta(double S) { return hurwitz_zeta(S, 1.0); }

double zeta_pmf(const ZetaParams& params, std::int64_t rank) {
    if (!std::isfinite(params.S) || params.S <= 1.0)
        throw BadParams("zeta_pmf: S must be > 1");
    if (params.Q && (!std::isfinite(*params.Q) || *params.Q < 0.0))
        throw BadParams("zeta_pmf: Q must be >= 0");

    if (params.N) {
        // Zipf-Mandelbrot on ranks 1..N with a finite normalizer.
        const std::int64_t n = *params.N;
        if (n < 1) throw BadParams("zeta_pmf: N must be >= 1");
        if (rank < 1 || rank > n)
            throw RankOutOfDomain("zeta_pmf: rank outside 1..N");
        const double q = params.Q.value_or(0.0);
        double denom = 0.0;
        for (std::int64_t i = 1; i <= n; ++i) denom += std::pow(double(i) + q, -params.S);
        return std::pow(double(rank) + q, -params.S) / denom;
    }
    if (params.Q) {
        if (rank < 0) throw RankOutOfDomain("zeta_pmf: rank must be >= 0");
        return std::pow(double(rank) + *params.Q, -params.S) /
               hurwitz_zeta(params.S, *params.Q);
    }
    if (rank < 1) throw RankOutOfDomain("zeta_pmf: rank must be >= 1");
    return std::pow(double(rank), -params.S) / riemann_zeta(params.S);
}

}  // namespace mpslab::distributions
