#pragma once

// Adaptive Simpson quadrature used as an independent oracle for
// closed-form moment formulas.  The tolerance is relative to the
// magnitude of the initial whole-interval estimate.

#include <cmath>
#include <functional>

namespace testsupport {
namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double m,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int depth = 28) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = detail::simpson(fa, fm, fb, b - a);
    const double tol = rel_tol * std::max(1.0, std::abs(whole));
    return detail::adapt(f, a, m, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace testsupport
