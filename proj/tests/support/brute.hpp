#pragma once

// Brute-force series oracles: direct Kahan-compensated sums plus an
// analytic tail, independent of the Euler-Maclaurin implementations.

#include <cmath>
#include <cstdint>

namespace testsupport {

class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sum_{i>=0} (i+Q)^-S via `terms` direct terms and the integral tail
// (N+Q)^(1-S)/(S-1) + (N+Q)^-S/2.
inline double brute_hurwitz_zeta(double s, double q, std::int64_t terms) {
    KahanSum sum;
    for (std::int64_t i = 0; i < terms; ++i) sum.add(std::pow(double(i) + q, -s));
    const double nq = double(terms) + q;
    sum.add(std::pow(nq, 1.0 - s) / (s - 1.0));
    sum.add(0.5 * std::pow(nq, -s));
    return sum.value();
}

// sum_{n>=1} k b (bn+a)^-(k+1) exp(-(bn+a)^-k) via direct terms plus the
// exact integral from N+1 and half the boundary term.
inline double brute_extreme_denominator(double k, double b, double a,
                                        std::int64_t terms) {
    auto f = [&](double x) {
        const double t = b * x + a;
        return k * b * std::pow(t, -(k + 1.0)) * std::exp(-std::pow(t, -k));
    };
    KahanSum sum;
    for (std::int64_t n = 1; n <= terms; ++n) sum.add(f(double(n)));
    const double edge = double(terms) + 1.0;
    sum.add(-std::expm1(-std::pow(b * edge + a, -k)));
    sum.add(0.5 * f(edge));
    return sum.value();
}

}  // namespace testsupport
