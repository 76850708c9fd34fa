#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mpslab::stattests {

// ------------------------------------------------------- Pearson chi^2

struct PearsonChi2 {
    double statistic = 0.0;
    std::int64_t dof = 0;        // classes - 1 - n_fitted
    double prob_sum = 0.0;       // sum of the class probabilities, as given
    std::vector<double> expected;
    std::vector<double> contributions;
};

// Chi^2 of observed counts against class probabilities; expected counts
// are N p_k with N the total observed.  Throws ZeroExpected when a class
// probability is not positive, EmptySample when there are no classes or
// no observations.
PearsonChi2 pearson_chi2(std::span<const std::int64_t> observed,
                         std::span<const double> class_probs,
                         std::int64_t n_fitted);

// ------------------------------------------------- contingency tables

enum class BTransform { Signed, Absolute };

// Joint frequency table of (a, b) pairs.  Event sets are the distinct
// values in order of first appearance after the transform is applied to
// b; k_ij is row-major over (a_events, b_events).
struct ContingencyTable {
    std::vector<std::int64_t> a_events;
    std::vector<std::int64_t> b_events;
    std::vector<std::int64_t> k_ij;
    std::vector<std::int64_t> m_i;  // row sums
    std::vector<std::int64_t> l_j;  // column sums
    std::int64_t n = 0;

    std::int64_t cell(std::size_t i, std::size_t j) const {
        return k_ij[i * b_events.size() + j];
    }
};

ContingencyTable contingency(std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                             BTransform transform);

// ---------------------------------------------------- independence tests

struct IndependenceResult {
    std::int64_t n = 0;
    std::int64_t m_A = 0;   // row event count
    std::int64_t m_B = 0;   // column event count
    std::int64_t m_AB = 0;  // occupied cells
    double L_n = 0.0;       // sum |nu_AB - nu_A nu_B| over all cells
    double I_n = 0.0;       // 2 sum nu_AB ln(nu_AB / (nu_A nu_B))
    double chi2_n = 0.0;    // sum (nu_AB - nu_A nu_B)^2 / (nu_A nu_B)
    double eps_L = 0.0;
    double eps_I = 0.0;
    double xi_chi2 = 0.0;   // (n chi2_n - m_A m_B) / sqrt(2 m_A m_B)
    bool reject_L = false;  // L_n > eps_L
    bool reject_I = false;  // I_n > eps_I
};

// Distance bounds for the distribution-free tests.
double eps_L(std::int64_t n, std::int64_t m_a, std::int64_t m_b);
double eps_I(std::int64_t n, std::int64_t m_a, std::int64_t m_b);
double xi_chi2(double chi2_n, std::int64_t n, std::int64_t m_a, std::int64_t m_b);

// All three statistics of one table.  Throws EmptyTable on n == 0.
IndependenceResult independence_tests(const ContingencyTable& table);

// CSV row format used by the reports: statistics rendered with %.2g.
std::string independence_csv_header();
std::string independence_csv_row(const std::string& ticker,
                                 const IndependenceResult& r);

// Cells with counts at or above a threshold, for the large-cell dumps.
struct CellReport {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t count = 0;
    double nu_ab = 0.0;
    double nu_a_nu_b = 0.0;
    double rel_excess_pct = 0.0;  // (nu_AB - nu_A nu_B) / nu_AB * 100
};

std::vector<CellReport> high_count_cells(const ContingencyTable& table,
                                         std::int64_t min_count = 50);
std::string cells_csv(std::span<const CellReport> cells);

}  // namespace mpslab::stattests
