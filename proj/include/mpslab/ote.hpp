#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpslab/moments.hpp"
#include "mpslab/ticks.hpp"

namespace mpslab::ote {

// Optimal trading elements: the unit round trips of the per-session maximum
// profit strategy at a filtration cost f, with profits restated at the real
// transaction cost t <= f.  Every element is profitable by construction.
enum class Direction { Bote, Sote };  // buy-side / sell-side element

struct OteElement {
    std::size_t session = 0;      // ordinal of the source session
    std::size_t entry_index = 0;  // tick indices into the source series
    std::size_t exit_index = 0;
    std::int64_t entry_price_ticks = 0;
    std::int64_t exit_price_ticks = 0;
    Direction direction = Direction::Bote;
    std::int64_t profit_cents = 0;  // at the t-cost, always positive
    std::int64_t duration_s = 0;    // time on position inside trading ranges
};

struct CostPair {
    std::int64_t f_cost_cents = 0;  // filtration cost, per contract per transaction
    std::int64_t t_cost_cents = 0;  // actual cost
};

// Element durations sum a-increments inside ranges only, so a position held
// across a range break contributes no paused seconds; same-second elements
// legally last zero.
std::vector<OteElement> extract_otes(const ticks::TickSeries& series,
                                     const ticks::SessionIndex& index,
                                     std::int64_t tick_value_cents,
                                     const CostPair& costs);

// Single uninterrupted chain treated as one session.
std::vector<OteElement> extract_otes(std::span<const std::int64_t> prices,
                                     std::span<const std::int64_t> times_s,
                                     std::int64_t tick_value_cents,
                                     const CostPair& costs);

// Element profits live on an exact integer lattice: the gain of a surviving
// round trip is at least n_min ticks, and each extra tick adds one tick value.
struct PlLattice {
    std::int64_t n_min = 0;         // minimal tick gain, floor(2f / k) + 1
    std::int64_t pl_min_cents = 0;  // k * n_min - 2t
    std::int64_t step_cents = 0;    // k
};

PlLattice pl_lattice(std::int64_t tick_value_cents, const CostPair& costs);

// Lattice ordinal of an element profit, 0 at pl_min.  Throws DomainError for
// values off the lattice.
std::int64_t ote_index(std::int64_t pl_cents, std::int64_t tick_value_cents,
                       const CostPair& costs);

// Index-preserving map of an element profit between two contracts filtered at
// the same f-cost.  Throws MismatchedFCost otherwise.
std::int64_t map_contracts(std::int64_t pl_cents, std::int64_t tick_value_from,
                           const CostPair& costs_from,
                           std::int64_t tick_value_to, const CostPair& costs_to);

struct OteStats {
    increments::MomentSummary profit;    // cents
    increments::MomentSummary duration;  // seconds
    double mean_per_session = 0;
    increments::Ecdf profit_ecdf;
    std::vector<increments::EpdfBin> profit_epdf;
};

OteStats ote_stats(std::span<const OteElement> elements, std::size_t n_sessions);

// Expected value, in cents, of entering blind and exiting like the average
// element: mean element profit minus the two extra tick spans the blind entry
// gives up against the filtration minimum.
double birth_strategy_expectation(double mean_profit_cents,
                                  std::int64_t tick_value_cents,
                                  const CostPair& costs);
double birth_strategy_expectation(std::span<const OteElement> elements,
                                  std::int64_t tick_value_cents,
                                  const CostPair& costs);

// `F-Cost,N_OTE,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt` rows; when
// `dollars` is set the summary holds cents and money renders as dollars.
struct OteTableRow {
    std::int64_t f_cost_cents = 0;
    increments::MomentSummary stats;
};

std::string ote_table_csv(std::span<const OteTableRow> rows, bool dollars);

}  // namespace mpslab::ote
