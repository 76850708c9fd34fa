#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpslab/moments.hpp"
#include "mpslab/ticks.hpp"

namespace mpslab::increments {

enum class IncrementKind { A, B, A1, A2, C, CR, CW, CH, CI };

std::string_view kind_label(IncrementKind kind);

struct IncrementSample {
    IncrementKind kind = IncrementKind::A;
    std::string unit;    // "s" for time kinds, "delta" for price kinds
    std::string origin;  // contract ticker
    std::vector<std::int64_t> values;
    bool defined = true;  // false when the sample cannot be formed (N < 2 etc.)
};

enum class Convention { Backward, Forward };

// Differences between neighboring transaction times / prices inside one
// range.  N < 2 yields an undefined (empty, flagged) sample.  Both
// conventions produce the same multiset of values.
IncrementSample a_increments(const ticks::TickSeries& series,
                             const ticks::SessionRange& range,
                             Convention convention = Convention::Backward);
IncrementSample b_increments(const ticks::TickSeries& series,
                             const ticks::SessionRange& range,
                             Convention convention = Convention::Backward);

// Inter-session price gaps split by pause type (regular / weekend / holiday)
// plus intra-session gaps between ranges.  `c` is the union of CR/CW/CH.
struct CFamily {
    IncrementSample c, cr, cw, ch, ci;
};

CFamily c_family(const ticks::TickSeries& series, const ticks::SessionIndex& index,
                 const ticks::Calendar& calendar);

// A1 = first transaction time - range open, A2 = range close - last
// transaction time.  An empty range contributes its full duration to both.
std::pair<IncrementSample, IncrementSample> a1_a2_increments(
    const ticks::TickSeries& series, const ticks::SessionIndex& index);

// Rebuilds every (time, price) from the first price plus the increment
// families; exact when each range has at least one tick.
struct Reconstruction {
    std::vector<std::int64_t> times;
    std::vector<std::int64_t> prices;
};

Reconstruction reconstruct(const ticks::TickSeries& series,
                           const ticks::SessionIndex& index);

// mean-b / mean-a over one range; undefined for N < 2 or zero mean a.
std::optional<double> rho_ba(const ticks::TickSeries& series,
                             const ticks::SessionRange& range);

// duration * mean_b / mean_a, the approximate price displacement over the
// range implied by the two mean increments.
double wald_identity(double duration_s, double mean_b, double mean_a);

// (P_last - P_first) / entering c-increment, one entry per session; the
// first session and zero-c cases are undefined.
std::vector<std::optional<double>> rho_bc(const ticks::TickSeries& series,
                                          const ticks::SessionIndex& index);

// | N*mean(P) - (N*P_1 + N*(P_N - P_1) - sum i*dP_i) |, evaluated in exact
// integer arithmetic scaled by N; always 0.
std::int64_t mean_price_order_identity(const ticks::TickSeries& series,
                                       const ticks::SessionRange& range);

enum class BTransform { Identity, Abs, Square };

struct ConditionalBA {
    std::map<std::int64_t, MomentSummary> by_a;
    std::optional<MomentSummary> tail;  // aggregate of a >= tail_lo
    std::int64_t tail_lo = 0;
    std::int64_t tail_hi = 0;  // largest a seen in the tail bucket
};

ConditionalBA conditional_b_given_a(const ticks::TickSeries& series,
                                    const ticks::SessionRange& range,
                                    BTransform transform = BTransform::Identity,
                                    std::optional<std::int64_t> tail_lo = std::nullopt);

// Price-limit capacity of the next b-increment alphabet, in delta units.
struct LimitCapacity {
    std::int64_t k_max = 0;    // 2*limit + 1
    std::int64_t k_minus = 0;  // current - limit-down
    std::int64_t k_plus = 0;   // limit-up - current
};

LimitCapacity limit_capacity(std::int64_t settle_prev, std::int64_t limit,
                             std::int64_t current);

// Appendix-shaped CSV:
// Type,Ticker,Size,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt
struct AppendixRow {
    std::string type;
    std::string ticker;
    MomentSummary stats;
};

std::string appendix_csv(const std::vector<AppendixRow>& rows);

}  // namespace mpslab::increments
