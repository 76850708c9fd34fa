#include "mpslab/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "mpslab/checked.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::stattests {

PearsonChi2 pearson_chi2(std::span<const std::int64_t> observed,
                         std::span<const double> class_probs,
                         std::int64_t n_fitted) {
    if (observed.empty()) throw EmptySample("pearson_chi2: no classes");
    if (observed.size() != class_probs.size())
        throw BadParams("pearson_chi2: counts and probabilities differ in size");
    if (n_fitted < 0) throw BadParams("pearson_chi2: n_fitted must be >= 0");

    std::int64_t total = 0;
    for (std::int64_t k : observed) {
        if (k < 0) throw BadParams("pearson_chi2: negative count");
        total = checked_add(total, k);
    }
    if (total == 0) throw EmptySample("pearson_chi2: no observations");

    PearsonChi2 out;
    out.dof = std::int64_t(observed.size()) - 1 - n_fitted;
    out.expected.reserve(observed.size());
    out.contributions.reserve(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double p = class_probs[i];
        if (!(p > 0.0)) throw ZeroExpected("pearson_chi2: class probability <= 0");
        const double expected = double(total) * p;
        const double diff = double(observed[i]) - expected;
        const double contribution = diff * diff / expected;
        out.expected.push_back(expected);
        out.contributions.push_back(contribution);
        out.statistic += contribution;
        out.prob_sum += p;
    }
    return out;
}

ContingencyTable contingency(
    std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
    BTransform transform) {
    ContingencyTable t;
    t.n = std::int64_t(pairs.size());
    if (pairs.empty()) return t;

    auto b_value = [&](std::int64_t b) {
        return transform == BTransform::Absolute ? checked_abs(b) : b;
    };

    for (const auto& [a, b] : pairs) {
        t.a_events.push_back(a);
        t.b_events.push_back(b_value(b));
    }
    auto uniq = [](std::vector<std::int64_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(t.a_events);
    uniq(t.b_events);

    std::unordered_map<std::int64_t, std::size_t> a_index, b_index;
    a_index.reserve(t.a_events.size());
    b_index.reserve(t.b_events.size());
    for (std::size_t i = 0; i < t.a_events.size(); ++i) a_index[t.a_events[i]] = i;
    for (std::size_t j = 0; j < t.b_events.size(); ++j) b_index[t.b_events[j]] = j;

    const std::size_t cols = t.b_events.size();
    t.k_ij.assign(t.a_events.size() * cols, 0);
    t.m_i.assign(t.a_events.size(), 0);
    t.l_j.assign(cols, 0);
    for (const auto& [a, b] : pairs) {
        const std::size_t i = a_index[a];
        const std::size_t j = b_index[b_value(b)];
        ++t.k_ij[i * cols + j];
        ++t.m_i[i];
        ++t.l_j[j];
    }
    return t;
}

double eps_L(std::int64_t n, std::int64_t m_a, std::int64_t m_b) {
    if (n <= 0 || m_a <= 0 || m_b <= 0)
        throw BadParams("eps_L: n, m_A and m_B must be positive");
    return std::sqrt(2.0 * std::log(2.0)) *
           std::sqrt(double(m_a) * double(m_b) / double(n));
}

double eps_I(std::int64_t n, std::int64_t m_a, std::int64_t m_b) {
    if (n <= 0 || m_a <= 0 || m_b <= 0)
        throw BadParams("eps_I: n, m_A and m_B must be positive");
    const double mm = double(m_a) * double(m_b);
    return mm * (2.0 * std::log(double(n) + mm) + 1.0) / double(n);
}

double xi_chi2(double chi2_n, std::int64_t n, std::int64_t m_a, std::int64_t m_b) {
    if (n <= 0 || m_a <= 0 || m_b <= 0)
        throw BadParams("xi_chi2: n, m_A and m_B must be positive");
    const double mm = double(m_a) * double(m_b);
    return (double(n) * chi2_n - mm) / std::sqrt(2.0 * mm);
}

IndependenceResult independence_tests(const ContingencyTable& table) {
    if (table.n == 0) throw EmptyTable("independence_tests: empty table");

    IndependenceResult r;
    r.n = table.n;
    r.m_A = std::int64_t(table.a_events.size());
    r.m_B = std::int64_t(table.b_events.size());

    const double n = double(table.n);
    const std::size_t cols = table.b_events.size();
    for (std::size_t i = 0; i < table.a_events.size(); ++i) {
        const double nu_a = double(table.m_i[i]) / n;
        for (std::size_t j = 0; j < cols; ++j) {
            const std::int64_t k = table.k_ij[i * cols + j];
            const double nu_ab = double(k) / n;
            const double indep = nu_a * double(table.l_j[j]) / n;
            const double diff = nu_ab - indep;
            r.L_n += std::abs(diff);
            r.chi2_n += diff * diff / indep;
            if (k > 0) {
                r.I_n += 2.0 * nu_ab * std::log(nu_ab / indep);
                ++r.m_AB;
            }
        }
    }
    r.eps_L = eps_L(r.n, r.m_A, r.m_B);
    r.eps_I = eps_I(r.n, r.m_A, r.m_B);
    r.xi_chi2 = xi_chi2(r.chi2_n, r.n, r.m_A, r.m_B);
    r.reject_L = r.L_n > r.eps_L;
    r.reject_I = r.I_n > r.eps_I;
    return r;
}

std::string independence_csv_header() {
    return "Ticker,n,m_A,m_B,m_AB,L_n,I_n,chi2_n,eps_L,eps_I,xi\n";
}

std::string independence_csv_row(const std::string& ticker,
                                 const IndependenceResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s,%lld,%lld,%lld,%lld,%.2g,%.2g,%.2g,%.2g,%.2g,%.2g\n",
                  ticker.c_str(), static_cast<long long>(r.n),
                  static_cast<long long>(r.m_A), static_cast<long long>(r.m_B),
                  static_cast<long long>(r.m_AB), r.L_n, r.I_n, r.chi2_n, r.eps_L,
                  r.eps_I, r.xi_chi2);
    return buf;
}

std::vector<CellReport> high_count_cells(const ContingencyTable& table,
                                         std::int64_t min_count) {
    if (table.n == 0) throw EmptyTable("high_count_cells: empty table");
    std::vector<CellReport> out;
    const double n = double(table.n);
    const std::size_t cols = table.b_events.size();
    for (std::size_t i = 0; i < table.a_events.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::int64_t k = table.k_ij[i * cols + j];
            if (k < min_count || k == 0) continue;
            CellReport c;
            c.a = table.a_events[i];
            c.b = table.b_events[j];
            c.count = k;
            c.nu_ab = double(k) / n;
            c.nu_a_nu_b = double(table.m_i[i]) / n * double(table.l_j[j]) / n;
            c.rel_excess_pct = (c.nu_ab - c.nu_a_nu_b) / c.nu_ab * 100.0;
            out.push_back(c);
        }
    }
    return out;
}

std::string cells_csv(std::span<const CellReport> cells) {
    std::string out = "a,b,count,nu_AB,nu_A_nu_B,excess_pct\n";
    char buf[192];
    for (const CellReport& c : cells) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%.6g,%.6g,%.2f\n",
                      static_cast<long long>(c.a), static_cast<long long>(c.b),
                      static_cast<long long>(c.count), c.nu_ab, c.nu_a_nu_b,
                      c.rel_excess_pct);
        out += buf;
    }
    return out;
}

}  // namespace mpslab::stattests
