#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mpslab/distributions.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::distributions {
namespace {

constexpr double kPenalty = 1e100;
constexpr double kNmTol = 1e-10;
constexpr std::int64_t kNmBudget = 100000;

using Objective = std::function<double(const std::vector<double>&)>;

struct NmState {
    std::vector<double> best_x;
    double best_value = kPenalty;
    std::int64_t evaluations = 0;
};

void clamp_into(std::vector<double>& x, std::span<const ParamBounds> box) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], box[i].lo, box[i].hi);
}

// Nelder-Mead with box projection: reflection 1, expansion 2,
// contraction 0.5, shrink 0.5.
void nelder_mead(const Objective& f, std::span<const ParamBounds> box,
                 std::vector<double> start, std::int64_t budget, NmState& state) {
    const std::size_t d = start.size();
    clamp_into(start, box);

    std::vector<std::vector<double>> xs(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) {
        const double h = 0.1 * (box[i].hi - box[i].lo);
        xs[i + 1][i] += (start[i] + h <= box[i].hi) ? h : -h;
    }

    const std::int64_t stop = state.evaluations + budget;
    auto eval = [&](std::vector<double> x) {
        clamp_into(x, box);
        double v;
        try {
            v = f(x);
        } catch (const Error&) {
            v = kPenalty;
        }
        if (!std::isfinite(v)) v = kPenalty;
        ++state.evaluations;
        if (v < state.best_value) {
            state.best_value = v;
            state.best_x = x;
        }
        return v;
    };

    std::vector<double> vals(d + 1);
    for (std::size_t i = 0; i <= d; ++i) vals[i] = eval(xs[i]);

    std::vector<std::size_t> order(d + 1);
    while (state.evaluations < stop) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t lo = order.front();
        const std::size_t hi = order.back();
        const std::size_t second = order[d > 0 ? d - 1 : 0];

        if (vals[hi] - vals[lo] <= kNmTol * (std::abs(vals[lo]) + kNmTol)) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t idx : order)
            if (idx != hi)
                for (std::size_t i = 0; i < d; ++i) centroid[i] += xs[idx][i];
        for (double& c : centroid) c /= double(d);

        auto blend = [&](double t) {
            std::vector<double> x(d);
            for (std::size_t i = 0; i < d; ++i)
                x[i] = centroid[i] + t * (centroid[i] - xs[hi][i]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double vr = eval(xr);
        if (vr < vals[lo]) {
            std::vector<double> xe = blend(2.0);
            const double ve = eval(xe);
            if (ve < vr) {
                xs[hi] = std::move(xe);
                vals[hi] = ve;
            } else {
                xs[hi] = std::move(xr);
                vals[hi] = vr;
            }
            continue;
        }
        if (vr < vals[second]) {
            xs[hi] = std::move(xr);
            vals[hi] = vr;
            continue;
        }
        std::vector<double> xc = blend(vr < vals[hi] ? 0.5 : -0.5);
        const double vc = eval(xc);
        if (vc < std::min(vr, vals[hi])) {
            xs[hi] = std::move(xc);
            vals[hi] = vc;
            continue;
        }
        for (std::size_t idx : order) {
            if (idx == lo) continue;
            for (std::size_t i = 0; i < d; ++i)
                xs[idx][i] = xs[lo][i] + 0.5 * (xs[idx][i] - xs[lo][i]);
            vals[idx] = eval(xs[idx]);
        }
    }
}

// Deterministic multi-start over a per-dimension quantile grid, then one
// restart from the incumbent.
NmState minimize(const Objective& f, std::span<const ParamBounds> box,
                 std::span<const std::vector<double>> extra_starts) {
    const std::size_t d = box.size();
    static constexpr double kQuantiles[3] = {0.15, 0.5, 0.85};

    std::vector<std::vector<double>> starts(extra_starts.begin(), extra_starts.end());
    std::size_t grid = 1;
    for (std::size_t i = 0; i < d; ++i) grid *= 3;
    for (std::size_t g = 0; g < grid; ++g) {
        std::vector<double> x(d);
        std::size_t rem = g;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = box[i].lo + kQuantiles[rem % 3] * (box[i].hi - box[i].lo);
            rem /= 3;
        }
        starts.push_back(std::move(x));
    }

    NmState state;
    const std::int64_t per_start =
        std::max<std::int64_t>(2000, kNmBudget / std::int64_t(starts.size() + 1));
    for (const auto& s : starts) {
        nelder_mead(f, box, s, per_start, state);
        if (state.evaluations >= kNmBudget) break;
    }
    if (!state.best_x.empty() && state.evaluations < kNmBudget)
        nelder_mead(f, box, state.best_x, per_start, state);
    return state;
}

double rel_error(double model, double target) {
    if (target != 0.0) return (model - target) / target;
    return model - target;
}

// ----------------------------------------------------------------- chi^2

void validate_classes(std::span<const Chi2Class> classes) {
    if (classes.size() < 2)
        throw DegenerateClasses("chi2 fit needs at least 2 classes");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Chi2Class& c = classes[i];
        if (c.lo > c.hi) throw DegenerateClasses("class bounds must satisfy lo <= hi");
        if (c.count < 0) throw DegenerateClasses("class counts must be >= 0");
        if (i > 0 && classes[i - 1].hi >= c.lo)
            throw DegenerateClasses("classes must be increasing and disjoint");
        total += c.count;
    }
    if (total <= 0) throw DegenerateClasses("total observed count must be > 0");
}

std::size_t param_count(Chi2Family family, std::size_t provided) {
    switch (family) {
        case Chi2Family::Riemann:
            if (provided == 1) return 1;
            throw BadParams("riemann fit takes exactly 1 parameter (S)");
        case Chi2Family::Hurwitz:
            if (provided == 2) return 2;
            throw BadParams("hurwitz fit takes exactly 2 parameters (S, Q)");
        case Chi2Family::ZipfMandelbrot:
            if (provided == 2) return 2;
            throw BadParams("zipf-mandelbrot fit takes exactly 2 parameters (S, Q)");
        case Chi2Family::ExtremeType2:
            if (provided == 2 || provided == 3) return provided;
            throw BadParams("extreme fit takes 2 (k, b) or 3 (k, b, a) parameters");
    }
    throw BadParams("unknown chi2 family");
}

std::int64_t max_hi(std::span<const Chi2Class> classes) {
    std::int64_t hi = classes.front().hi;
    for (const Chi2Class& c : classes) hi = std::max(hi, c.hi);
    return hi;
}

std::vector<double> class_probs(Chi2Family family, std::span<const double> params,
                                std::span<const Chi2Class> classes) {
    std::vector<double> probs;
    probs.reserve(classes.size());

    auto sum_ranks = [&](auto&& pmf_numerator, double denom, std::int64_t rank_min) {
        for (const Chi2Class& c : classes) {
            if (c.lo < rank_min)
                throw RankOutOfDomain("class bound below the family domain");
            double p = 0.0;
            for (std::int64_t r = c.lo; r <= c.hi; ++r) p += pmf_numerator(r);
            probs.push_back(p / denom);
        }
    };

    switch (family) {
        case Chi2Family::Riemann: {
            const double s = params[0];
            sum_ranks([&](std::int64_t r) { return std::pow(double(r), -s); },
                      riemann_zeta(s), 1);
            break;
        }
        case Chi2Family::Hurwitz: {
            const double s = params[0];
            const double q = params[1];
            sum_ranks([&](std::int64_t r) { return std::pow(double(r) + q, -s); },
                      hurwitz_zeta(s, q), 0);
            break;
        }
        case Chi2Family::ZipfMandelbrot: {
            const double s = params[0];
            const double q = params[1];
            if (!std::isfinite(s) || s <= 0.0)
                throw BadParams("zipf-mandelbrot: S must be > 0");
            if (!std::isfinite(q) || q < 0.0)
                throw BadParams("zipf-mandelbrot: Q must be >= 0");
            const std::int64_t n = max_hi(classes);
            double denom = 0.0;
            for (std::int64_t i = 1; i <= n; ++i) denom += std::pow(double(i) + q, -s);
            const std::int64_t top = n;
            for (const Chi2Class& c : classes)
                if (c.hi > top) throw RankOutOfDomain("class bound above N");
            sum_ranks([&](std::int64_t r) { return std::pow(double(r) + q, -s); },
                      denom, 1);
            break;
        }
        case Chi2Family::ExtremeType2: {
            ExtremeType2Params p;
            p.k = params[0];
            p.b = params[1];
            p.a = params.size() == 3 ? params[2] : 0.0;
            const double denom = extreme_pmf2_denominator(p);
            sum_ranks(
                [&](std::int64_t r) {
                    return r == 0 ? 0.0 : frechet_pdf2(p.k, p.b, p.a, double(r));
                },
                denom, 0);
            break;
        }
    }
    return probs;
}

double chi2_statistic(std::span<const Chi2Class> classes,
                      std::span<const double> probs, std::int64_t total) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double expected = double(total) * probs[i];
        if (!(expected > 0.0)) return kPenalty;
        const double diff = double(classes[i].count) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

Chi2Fit finish_fit(Chi2Family family, std::span<const Chi2Class> classes,
                   std::vector<double> params, std::int64_t evaluations) {
    std::int64_t total = 0;
    for (const Chi2Class& c : classes) total += c.count;

    Chi2Fit fit;
    fit.family = family;
    fit.params = std::move(params);
    fit.evaluations = evaluations;
    const std::vector<double> probs = class_probs(family, fit.params, classes);
    fit.chi2 = chi2_statistic(classes, probs, total);
    fit.dof = std::int64_t(classes.size()) - 1 - std::int64_t(fit.params.size());
    fit.prob_sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    fit.expected.reserve(probs.size());
    for (double p : probs) fit.expected.push_back(double(total) * p);
    return fit;
}

}  // namespace

// ------------------------------------------------------------- Kumaraswamy

KumaraswamyFit fit_kumaraswamy_moments(const increments::MomentSummary& target) {
    if (!target.has_skewness || !target.has_excess_kurtosis)
        throw BadParams("fit_kumaraswamy_moments: target needs skewness and kurtosis");
    if (!(target.std_dev > 0.0))
        throw BadParams("fit_kumaraswamy_moments: target std must be > 0");
    if (!(target.mean > 0.0))
        throw BadParams("fit_kumaraswamy_moments: target mean must be > 0");

    // Stage 1: shapes (a, b) in log space against skewness and excess
    // kurtosis, which do not depend on the scale.
    const double log_lo = std::log(1e-3);
    const double log_hi = std::log(1e3);
    const std::vector<ParamBounds> shape_box{{log_lo, log_hi}, {log_lo, log_hi}};
    auto shape_objective = [&](const std::vector<double>& u) {
        KumaraswamyParams p;
        p.a = std::exp(u[0]);
        p.b = std::exp(u[1]);
        p.z_min = 0.0;
        p.z_max = 1.0;
        p.F0 = 0.0;
        const Moments4 m = kumaraswamy_summary(p);
        if (!(m.variance > 0.0) || !std::isfinite(m.skewness) ||
            !std::isfinite(m.excess_kurtosis))
            return kPenalty;
        return std::abs(rel_error(m.skewness, target.skewness)) +
               std::abs(rel_error(m.excess_kurtosis, target.excess_kurtosis));
    };
    const NmState shapes = minimize(shape_objective, shape_box, {});
    if (shapes.best_value >= kPenalty)
        throw NoConvergence("fit_kumaraswamy_moments: shape stage failed");

    KumaraswamyFit fit;
    fit.params.a = std::exp(shapes.best_x[0]);
    fit.params.b = std::exp(shapes.best_x[1]);
    fit.params.z_min = 0.0;
    fit.params.F0 = 0.0;
    fit.shape_error = shapes.best_value;

    // Stage 2: support width against mean and standard deviation with
    // the shapes frozen; both scale linearly in z_max.
    KumaraswamyParams unit = fit.params;
    unit.z_max = 1.0;
    const Moments4 base = kumaraswamy_summary(unit);
    const double base_std = std::sqrt(base.variance);
    const std::vector<ParamBounds> scale_box{{std::log(1e-9), std::log(1e12)}};
    auto scale_objective = [&](const std::vector<double>& u) {
        const double z = std::exp(u[0]);
        return std::abs(rel_error(z * base.mean, target.mean)) +
               std::abs(rel_error(z * base_std, target.std_dev));
    };
    const std::vector<std::vector<double>> seeds{
        {std::log(target.mean / base.mean)},
        {std::log(target.std_dev / base_std)},
    };
    const NmState scale = minimize(scale_objective, scale_box, seeds);
    if (scale.best_value >= kPenalty)
        throw NoConvergence("fit_kumaraswamy_moments: scale stage failed");

    fit.params.z_max = std::exp(scale.best_x[0]);
    fit.scale_error = scale.best_value;
    fit.evaluations = shapes.evaluations + scale.evaluations;
    return fit;
}

// ------------------------------------------------------------------ chi^2

Chi2Fit fit_chi2(Chi2Family family, std::span<const Chi2Class> classes,
                 std::span<const ParamBounds> box) {
    validate_classes(classes);
    param_count(family, box.size());
    for (const ParamBounds& b : box)
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
            throw BadParams("fit_chi2: parameter bounds must satisfy lo < hi");

    std::int64_t total = 0;
    for (const Chi2Class& c : classes) total += c.count;

    auto objective = [&](const std::vector<double>& params) {
        const std::vector<double> probs = class_probs(family, params, classes);
        return chi2_statistic(classes, probs, total);
    };
    const NmState state = minimize(objective, box, {});
    if (state.best_x.empty() || state.best_value >= kPenalty)
        throw NoConvergence("fit_chi2: no admissible parameters found");
    return finish_fit(family, classes, state.best_x, state.evaluations);
}

Chi2Fit eval_chi2(Chi2Family family, std::span<const Chi2Class> classes,
                  std::span<const double> params) {
    validate_classes(classes);
    param_count(family, params.size());
    return finish_fit(family, classes, {params.begin(), params.end()}, 0);
}

std::string family_name(Chi2Family family) {
    switch (family) {
        case Chi2Family::Riemann: return "riemann";
        case Chi2Family::Hurwitz: return "hurwitz";
        case Chi2Family::ZipfMandelbrot: return "zipf-mandelbrot";
        case Chi2Family::ExtremeType2: return "extreme-type2";
    }
    return "unknown";
}

std::string fit_report_csv(const Chi2Fit& fit, std::span<const Chi2Class> classes) {
    char buf[128];
    std::string out = "family,params,chi2,dof,prob_sum\n";
    out += family_name(fit.family);
    out += ',';
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", fit.params[i]);
        if (i > 0) out += ';';
        out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.9g,%lld,%.9g\n", fit.chi2,
                  static_cast<long long>(fit.dof), fit.prob_sum);
    out += buf;
    out += "lo,hi,observed,expected,contribution\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double expected = fit.expected[i];
        const double diff = double(classes[i].count) - expected;
        std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%.9g,%.9g\n",
                      static_cast<long long>(classes[i].lo),
                      static_cast<long long>(classes[i].hi),
                      static_cast<long long>(classes[i].count), expected,
                      expected > 0.0 ? diff * diff / expected : 0.0);
        out += buf;
    }
    return out;
}

}  // namespace mpslab::distributions
