#include "mpslab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mpslab/errors.hpp"
#include "mpslab/kernels.hpp"

namespace mpslab::increments {

MomentSummary moments(std::span<const double> values) {
    if (values.empty()) throw EmptySample("moments of empty sample");
    const std::size_t n = values.size();
    MomentSummary s;
    s.size = n;

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(n);

    auto mm = kernels::minmax_counts(values.data(), n);
    s.min = mm.min;
    s.max = mm.max;
    s.n_min = static_cast<std::int64_t>(mm.n_min);
    s.n_max = static_cast<std::int64_t>(mm.n_max);

    auto ps = kernels::centered_power_sums(values.data(), n, s.mean);
    const double nd = static_cast<double>(n);
    const double m2 = ps.s2 / nd;
    s.std_dev = n >= 2 ? std::sqrt(ps.s2 / (nd - 1.0)) : 0.0;
    if (n >= 3 && m2 > 0.0) {
        s.skewness = (ps.s3 / nd) / std::pow(m2, 1.5);
        s.has_skewness = true;
    }
    if (n >= 4 && m2 > 0.0) {
        s.excess_kurtosis = (ps.s4 / nd) / (m2 * m2) - 3.0;
        s.has_excess_kurtosis = true;
    }
    return s;
}

MomentSummary moments(std::span<const std::int64_t> values) {
    std::vector<double> v(values.begin(), values.end());
    return moments(std::span<const double>(v));
}

double Ecdf::operator()(double x) const {
    double p = 0.0;
    for (const auto& st : steps) {
        if (st.value > x) break;
        p = st.prob;
    }
    return p;
}

Ecdf ecdf(std::span<const double> values) {
    if (values.empty()) throw EmptySample("ecdf of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    Ecdf out;
    out.n = static_cast<std::int64_t>(sorted.size());
    std::int64_t cum = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        cum += static_cast<std::int64_t>(j - i);
        out.steps.push_back({sorted[i], cum,
                             static_cast<double>(cum) / static_cast<double>(out.n)});
        i = j;
    }
    return out;
}

Ecdf ecdf(std::span<const std::int64_t> values) {
    std::vector<double> v(values.begin(), values.end());
    return ecdf(std::span<const double>(v));
}

std::vector<EpdfBin> epdf(std::span<const double> values) {
    Ecdf e = ecdf(values);
    std::vector<EpdfBin> bins;
    bins.reserve(e.steps.size());
    std::int64_t prev = 0;
    for (const auto& st : e.steps) {
        std::int64_t count = st.cum_count - prev;
        bins.push_back({st.value, count,
                        static_cast<double>(count) / static_cast<double>(e.n)});
        prev = st.cum_count;
    }
    return bins;
}

std::vector<EpdfBin> epdf(std::span<const std::int64_t> values) {
    std::vector<double> v(values.begin(), values.end());
    return epdf(std::span<const double>(v));
}

std::string stat_or_undefined(double value, bool defined, int sig_digits) {
    if (!defined) return "undefined";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, value);
    return buf;
}

}  // namespace mpslab::increments
