#include "mpslab/ote.hpp"

#include <cmath>
#include <cstdio>

#include "mpslab/checked.hpp"
#include "mpslab/errors.hpp"
#include "mpslab/mps.hpp"

namespace mpslab::ote {

namespace {

void validate_costs(std::int64_t tick_value_cents, const CostPair& costs) {
    if (tick_value_cents <= 0) throw BadParams("tick value must be positive");
    if (costs.f_cost_cents <= 0) throw BadParams("f-cost must be positive");
    if (costs.t_cost_cents < 0 || costs.t_cost_cents > costs.f_cost_cents)
        throw BadParams("t-cost must lie in [0, f-cost]");
}

// Unit trades of the maximum profit strategy on one chain, re-costed at t.
// `durations` carries the within-range elapsed-seconds prefix, `global`
// translates chain positions back to series tick indices.
void append_elements(std::span<const std::int64_t> prices,
                     std::span<const std::int64_t> duration_prefix,
                     std::span<const std::size_t> global, std::size_t session,
                     std::int64_t tick_value_cents, const CostPair& costs,
                     std::vector<OteElement>& out) {
    const mps::Strategy strat = mps::mps0(prices, tick_value_cents,
                                          costs.f_cost_cents);
    if (strat.empty()) return;
    const std::vector<mps::Trade> trades = mps::aggregate_trades(
        strat, prices, duration_prefix, tick_value_cents, costs.t_cost_cents);
    for (const mps::Trade& t : trades) {
        OteElement e;
        e.session = session;
        e.entry_index = global.empty() ? t.entry_index : global[t.entry_index];
        e.exit_index = global.empty() ? t.exit_index : global[t.exit_index];
        e.entry_price_ticks = t.entry_price_ticks;
        e.exit_price_ticks = t.exit_price_ticks;
        e.direction = t.units > 0 ? Direction::Bote : Direction::Sote;
        e.profit_cents = t.pl_cents;
        e.duration_s = t.duration_s;
        out.push_back(e);
    }
}

}  // namespace

std::vector<OteElement> extract_otes(const ticks::TickSeries& series,
                                     const ticks::SessionIndex& index,
                                     std::int64_t tick_value_cents,
                                     const CostPair& costs) {
    validate_costs(tick_value_cents, costs);
    std::vector<OteElement> out;
    std::vector<std::int64_t> prices, prefix;
    std::vector<std::size_t> global;
    for (std::size_t s = 0; s < index.sessions.size(); ++s) {
        prices.clear();
        prefix.clear();
        global.clear();
        for (const ticks::SessionRange& r : index.sessions[s].ranges) {
            for (std::size_t i = 0; i < r.count; ++i) {
                const std::size_t g = r.first + i;
                const ticks::Tick& t = series.ticks[g];
                // i == 0 starts a range: the pause before it contributes nothing
                const std::int64_t gap =
                    i == 0 ? 0
                           : checked_sub(t.time_s, series.ticks[g - 1].time_s);
                prefix.push_back(prefix.empty() ? 0 : prefix.back() + gap);
                prices.push_back(t.price_ticks);
                global.push_back(g);
            }
        }
        append_elements(prices, prefix, global, s, tick_value_cents, costs, out);
    }
    return out;
}

std::vector<OteElement> extract_otes(std::span<const std::int64_t> prices,
                                     std::span<const std::int64_t> times_s,
                                     std::int64_t tick_value_cents,
                                     const CostPair& costs) {
    validate_costs(tick_value_cents, costs);
    if (times_s.size() != prices.size())
        throw BadParams("times and prices differ in length");
    std::vector<OteElement> out;
    append_elements(prices, times_s, {}, 0, tick_value_cents, costs, out);
    return out;
}

PlLattice pl_lattice(std::int64_t tick_value_cents, const CostPair& costs) {
    validate_costs(tick_value_cents, costs);
    PlLattice lat;
    lat.n_min = 2 * costs.f_cost_cents / tick_value_cents + 1;
    lat.pl_min_cents = checked_sub(checked_mul(tick_value_cents, lat.n_min),
                                   2 * costs.t_cost_cents);
    lat.step_cents = tick_value_cents;
    return lat;
}

std::int64_t ote_index(std::int64_t pl_cents, std::int64_t tick_value_cents,
                       const CostPair& costs) {
    const PlLattice lat = pl_lattice(tick_value_cents, costs);
    const std::int64_t off = checked_sub(pl_cents, lat.pl_min_cents);
    if (off < 0 || off % lat.step_cents != 0)
        throw DomainError("pl " + std::to_string(pl_cents) +
                          " cents is not on the element lattice");
    return off / lat.step_cents;
}

std::int64_t map_contracts(std::int64_t pl_cents, std::int64_t tick_value_from,
                           const CostPair& costs_from,
                           std::int64_t tick_value_to,
                           const CostPair& costs_to) {
    if (costs_from.f_cost_cents != costs_to.f_cost_cents)
        throw MismatchedFCost("element lattices filtered at different f-costs");
    const std::int64_t i = ote_index(pl_cents, tick_value_from, costs_from);
    const PlLattice to = pl_lattice(tick_value_to, costs_to);
    return checked_add(to.pl_min_cents, checked_mul(i, to.step_cents));
}

OteStats ote_stats(std::span<const OteElement> elements, std::size_t n_sessions) {
    if (elements.empty()) throw EmptyElements("no elements to summarize");
    if (n_sessions == 0) throw BadParams("need at least one session");
    std::vector<std::int64_t> profits, durations;
    profits.reserve(elements.size());
    durations.reserve(elements.size());
    for (const OteElement& e : elements) {
        profits.push_back(e.profit_cents);
        durations.push_back(e.duration_s);
    }
    OteStats s;
    s.profit = increments::moments(std::span<const std::int64_t>(profits));
    s.duration = increments::moments(std::span<const std::int64_t>(durations));
    s.mean_per_session =
        static_cast<double>(elements.size()) / static_cast<double>(n_sessions);
    s.profit_ecdf = increments::ecdf(std::span<const std::int64_t>(profits));
    s.profit_epdf = increments::epdf(std::span<const std::int64_t>(profits));
    return s;
}

double birth_strategy_expectation(double mean_profit_cents,
                                  std::int64_t tick_value_cents,
                                  const CostPair& costs) {
    const PlLattice lat = pl_lattice(tick_value_cents, costs);
    return mean_profit_cents -
           2.0 * static_cast<double>(checked_mul(tick_value_cents, lat.n_min));
}

double birth_strategy_expectation(std::span<const OteElement> elements,
                                  std::int64_t tick_value_cents,
                                  const CostPair& costs) {
    if (elements.empty()) throw EmptyElements("no elements to average");
    double sum = 0;
    for (const OteElement& e : elements) sum += static_cast<double>(e.profit_cents);
    return birth_strategy_expectation(sum / static_cast<double>(elements.size()),
                                      tick_value_cents, costs);
}

std::string ote_table_csv(std::span<const OteTableRow> rows, bool dollars) {
    std::string out = "F-Cost,N_OTE,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt\n";
    char buf[256];
    const double unit = dollars ? 100.0 : 1.0;
    for (const OteTableRow& r : rows) {
        const increments::MomentSummary& m = r.stats;
        std::snprintf(buf, sizeof buf, "%g,%zu,%g,%g,%lld,%g,%lld,%g,%s,%s\n",
                      static_cast<double>(r.f_cost_cents) / 100.0, m.size,
                      m.mean / unit, m.min / unit,
                      static_cast<long long>(m.n_min), m.max / unit,
                      static_cast<long long>(m.n_max), m.std_dev / unit,
                      increments::stat_or_undefined(m.skewness, m.has_skewness)
                          .c_str(),
                      increments::stat_or_undefined(m.excess_kurtosis,
                                                    m.has_excess_kurtosis)
                          .c_str());
        out += buf;
    }
    return out;
}

}  // namespace mpslab::ote
