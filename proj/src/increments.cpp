#include "mpslab/increments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mpslab/checked.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::increments {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

IncrementSample diff_sample(IncrementKind kind, const char* unit,
                            const ticks::TickSeries& series,
                            const ticks::SessionRange& range, bool price,
                            Convention convention) {
    IncrementSample s;
    s.kind = kind;
    s.unit = unit;
    s.origin = series.contract.symbol;
    if (range.count < 2) {
        s.defined = false;
        return s;
    }
    s.values.reserve(range.count - 1);
    auto at = [&](std::size_t i) {
        const ticks::Tick& t = series.ticks[range.first + i];
        return price ? t.price_ticks : t.time_s;
    };
    if (convention == Convention::Backward) {
        for (std::size_t i = 1; i < range.count; ++i)
            s.values.push_back(checked_sub(at(i), at(i - 1)));
    } else {
        for (std::size_t i = 0; i + 1 < range.count; ++i)
            s.values.push_back(checked_sub(at(i + 1), at(i)));
    }
    return s;
}

struct RangeEnds {
    bool has_ticks = false;
    std::int64_t first_price = 0, last_price = 0;
    std::int64_t first_time = 0, last_time = 0;
};

RangeEnds range_ends(const ticks::TickSeries& series, const ticks::SessionRange& r) {
    RangeEnds e;
    if (r.count == 0) return e;
    e.has_ticks = true;
    e.first_price = series.ticks[r.first].price_ticks;
    e.last_price = series.ticks[r.first + r.count - 1].price_ticks;
    e.first_time = series.ticks[r.first].time_s;
    e.last_time = series.ticks[r.first + r.count - 1].time_s;
    return e;
}

struct SessionEnds {
    bool has_ticks = false;
    std::int64_t first_price = 0, last_price = 0;
};

SessionEnds session_ends(const ticks::TickSeries& series, const ticks::Session& s) {
    SessionEnds e;
    for (const auto& r : s.ranges) {
        if (r.count == 0) continue;
        if (!e.has_ticks) {
            e.has_ticks = true;
            e.first_price = series.ticks[r.first].price_ticks;
        }
        e.last_price = series.ticks[r.first + r.count - 1].price_ticks;
    }
    return e;
}

// Pause classification between consecutive calendar sessions: a weekday
// strictly between the two dates that the calendar does not list means a
// holiday pause; otherwise any Saturday/Sunday in between means a weekend
// pause; otherwise the pause is regular.  Holiday outranks weekend.
IncrementKind classify_pause(const ticks::Calendar& calendar,
                             const ticks::Session& from, const ticks::Session& to) {
    std::set<std::int64_t> listed;
    for (const auto& d : calendar)
        listed.insert(ticks::days_from_civil(d.year, d.month, d.day));
    std::int64_t d1 = ticks::days_from_civil(from.year, from.month, from.day);
    std::int64_t d2 = ticks::days_from_civil(to.year, to.month, to.day);
    bool weekend = false;
    for (std::int64_t d = d1 + 1; d < d2; ++d) {
        int wd = ticks::weekday_from_days(d);
        if (wd == 0 || wd == 6) {
            weekend = true;
        } else if (!listed.count(d)) {
            return IncrementKind::CH;
        }
    }
    return weekend ? IncrementKind::CW : IncrementKind::CR;
}

IncrementSample make_sample(IncrementKind kind, const char* unit,
                            const std::string& origin) {
    IncrementSample s;
    s.kind = kind;
    s.unit = unit;
    s.origin = origin;
    return s;
}

}  // namespace

std::string_view kind_label(IncrementKind kind) {
    switch (kind) {
        case IncrementKind::A: return "a";
        case IncrementKind::B: return "b";
        case IncrementKind::A1: return "a1";
        case IncrementKind::A2: return "a2";
        case IncrementKind::C: return "C";
        case IncrementKind::CR: return "CR";
        case IncrementKind::CW: return "CW";
        case IncrementKind::CH: return "CH";
        case IncrementKind::CI: return "CI";
    }
    return "?";
}

IncrementSample a_increments(const ticks::TickSeries& series,
                             const ticks::SessionRange& range,
                             Convention convention) {
    return diff_sample(IncrementKind::A, "s", series, range, false, convention);
}

IncrementSample b_increments(const ticks::TickSeries& series,
                             const ticks::SessionRange& range,
                             Convention convention) {
    return diff_sample(IncrementKind::B, "delta", series, range, true, convention);
}

CFamily c_family(const ticks::TickSeries& series, const ticks::SessionIndex& index,
                 const ticks::Calendar& calendar) {
    const std::string& org = series.contract.symbol;
    CFamily f{make_sample(IncrementKind::C, "delta", org),
              make_sample(IncrementKind::CR, "delta", org),
              make_sample(IncrementKind::CW, "delta", org),
              make_sample(IncrementKind::CH, "delta", org),
              make_sample(IncrementKind::CI, "delta", org)};

    for (std::size_t s = 0; s + 1 < index.sessions.size(); ++s) {
        SessionEnds prev = session_ends(series, index.sessions[s]);
        SessionEnds next = session_ends(series, index.sessions[s + 1]);
        if (!prev.has_ticks || !next.has_ticks) continue;
        std::int64_t c = checked_sub(next.first_price, prev.last_price);
        f.c.values.push_back(c);
        switch (classify_pause(calendar, index.sessions[s], index.sessions[s + 1])) {
            case IncrementKind::CW: f.cw.values.push_back(c); break;
            case IncrementKind::CH: f.ch.values.push_back(c); break;
            default: f.cr.values.push_back(c); break;
        }
    }

    for (const auto& session : index.sessions) {
        for (std::size_t r = 0; r + 1 < session.ranges.size(); ++r) {
            RangeEnds a = range_ends(series, session.ranges[r]);
            RangeEnds b = range_ends(series, session.ranges[r + 1]);
            if (!a.has_ticks || !b.has_ticks) continue;
            f.ci.values.push_back(checked_sub(b.first_price, a.last_price));
        }
    }

    f.c.defined = index.sessions.size() >= 2;
    f.cr.defined = f.cw.defined = f.ch.defined = f.c.defined;
    return f;
}

std::pair<IncrementSample, IncrementSample> a1_a2_increments(
    const ticks::TickSeries& series, const ticks::SessionIndex& index) {
    auto a1 = make_sample(IncrementKind::A1, "s", series.contract.symbol);
    auto a2 = make_sample(IncrementKind::A2, "s", series.contract.symbol);
    for (const auto& session : index.sessions) {
        for (const auto& r : session.ranges) {
            if (r.count == 0) {
                std::int64_t dur = checked_sub(r.close_s, r.open_s);
                a1.values.push_back(dur);
                a2.values.push_back(dur);
                continue;
            }
            RangeEnds e = range_ends(series, r);
            a1.values.push_back(checked_sub(e.first_time, r.open_s));
            a2.values.push_back(checked_sub(r.close_s, e.last_time));
        }
    }
    return {std::move(a1), std::move(a2)};
}

Reconstruction reconstruct(const ticks::TickSeries& series,
                           const ticks::SessionIndex& index) {
    Reconstruction out;
    out.times.resize(series.ticks.size());
    out.prices.resize(series.ticks.size());
    bool have_price = false;
    std::int64_t prev_last_price = 0;
    for (const auto& session : index.sessions) {
        for (const auto& r : session.ranges) {
            if (r.count == 0)
                throw EmptyRange("reconstruct requires every range non-empty");
            auto a1 = checked_sub(series.ticks[r.first].time_s, r.open_s);
            std::int64_t t = checked_add(r.open_s, a1);
            std::int64_t p;
            if (!have_price) {
                p = series.ticks[r.first].price_ticks;
                have_price = true;
            } else {
                std::int64_t gap = checked_sub(series.ticks[r.first].price_ticks,
                                               prev_last_price);
                p = checked_add(prev_last_price, gap);
            }
            out.times[r.first] = t;
            out.prices[r.first] = p;
            for (std::size_t i = 1; i < r.count; ++i) {
                const auto& prev = series.ticks[r.first + i - 1];
                const auto& cur = series.ticks[r.first + i];
                t = checked_add(t, checked_sub(cur.time_s, prev.time_s));
                p = checked_add(p, checked_sub(cur.price_ticks, prev.price_ticks));
                out.times[r.first + i] = t;
                out.prices[r.first + i] = p;
            }
            prev_last_price = p;
        }
    }
    return out;
}

std::optional<double> rho_ba(const ticks::TickSeries& series,
                             const ticks::SessionRange& range) {
    if (range.count < 2) return std::nullopt;
    RangeEnds e = range_ends(series, range);
    std::int64_t dt = checked_sub(e.last_time, e.first_time);
    std::int64_t dp = checked_sub(e.last_price, e.first_price);
    if (dt == 0) return std::nullopt;
    // mean-b / mean-a over the same index set reduces to dP / dt.
    return static_cast<double>(dp) / static_cast<double>(dt);
}

double wald_identity(double duration_s, double mean_b, double mean_a) {
    if (mean_a == 0.0) throw DomainError("wald_identity: zero mean a-increment");
    return duration_s * (mean_b / mean_a);
}

std::vector<std::optional<double>> rho_bc(const ticks::TickSeries& series,
                                          const ticks::SessionIndex& index) {
    std::vector<std::optional<double>> out(index.sessions.size());
    for (std::size_t s = 1; s < index.sessions.size(); ++s) {
        SessionEnds prev = session_ends(series, index.sessions[s - 1]);
        SessionEnds cur = session_ends(series, index.sessions[s]);
        if (!prev.has_ticks || !cur.has_ticks) continue;
        std::int64_t c = checked_sub(cur.first_price, prev.last_price);
        if (c == 0) continue;  // undefined for zero c-increments
        std::int64_t move = checked_sub(cur.last_price, cur.first_price);
        out[s] = static_cast<double>(move) / static_cast<double>(c);
    }
    return out;
}

std::int64_t mean_price_order_identity(const ticks::TickSeries& series,
                                       const ticks::SessionRange& range) {
    if (range.count < 2)
        throw EmptySample("mean_price_order_identity needs N >= 2");
    const auto n = static_cast<std::int64_t>(range.count);
    std::int64_t sum_p = 0;
    for (std::size_t i = 0; i < range.count; ++i)
        sum_p = checked_add(sum_p, series.ticks[range.first + i].price_ticks);
    std::int64_t p1 = series.ticks[range.first].price_ticks;
    std::int64_t pn = series.ticks[range.first + range.count - 1].price_ticks;
    std::int64_t weighted = 0;  // sum over i of i * dP_i, increments numbered from 1
    for (std::size_t i = 1; i < range.count; ++i) {
        std::int64_t dp = checked_sub(series.ticks[range.first + i].price_ticks,
                                      series.ticks[range.first + i - 1].price_ticks);
        weighted = checked_add(weighted, checked_mul(static_cast<std::int64_t>(i), dp));
    }
    std::int64_t rhs = checked_sub(
        checked_add(checked_mul(n, p1), checked_mul(n, checked_sub(pn, p1))), weighted);
    return checked_abs(checked_sub(sum_p, rhs));
}

ConditionalBA conditional_b_given_a(const ticks::TickSeries& series,
                                    const ticks::SessionRange& range,
                                    BTransform transform,
                                    std::optional<std::int64_t> tail_lo) {
    ConditionalBA out;
    if (range.count < 2) return out;
    std::map<std::int64_t, std::vector<std::int64_t>> groups;
    std::vector<std::int64_t> tail_values;
    std::int64_t tail_hi = 0;
    for (std::size_t i = 1; i < range.count; ++i) {
        const auto& prev = series.ticks[range.first + i - 1];
        const auto& cur = series.ticks[range.first + i];
        std::int64_t a = checked_sub(cur.time_s, prev.time_s);
        std::int64_t b = checked_sub(cur.price_ticks, prev.price_ticks);
        switch (transform) {
            case BTransform::Identity: break;
            case BTransform::Abs: b = checked_abs(b); break;
            case BTransform::Square: b = checked_mul(b, b); break;
        }
        if (tail_lo && a >= *tail_lo) {
            tail_values.push_back(b);
            tail_hi = std::max(tail_hi, a);
        } else {
            groups[a].push_back(b);
        }
    }
    for (const auto& [a, values] : groups)
        out.by_a.emplace(a, moments(std::span<const std::int64_t>(values)));
    if (tail_lo && !tail_values.empty()) {
        out.tail = moments(std::span<const std::int64_t>(tail_values));
        out.tail_lo = *tail_lo;
        out.tail_hi = tail_hi;
    }
    return out;
}

LimitCapacity limit_capacity(std::int64_t settle_prev, std::int64_t limit,
                             std::int64_t current) {
    if (limit <= 0 || settle_prev <= limit)
        throw BadParams("limit_capacity: need limit > 0 and settle_prev > limit");
    std::int64_t down = checked_sub(settle_prev, limit);
    std::int64_t up = checked_add(settle_prev, limit);
    if (current < down || current > up)
        throw CurrentOutsideLimits("price " + std::to_string(current) + " outside [" +
                                   std::to_string(down) + ", " + std::to_string(up) + "]");
    LimitCapacity cap;
    cap.k_max = checked_add(checked_mul(std::int64_t{2}, limit), std::int64_t{1});
    cap.k_minus = checked_sub(current, down);
    cap.k_plus = checked_sub(up, current);
    return cap;
}

std::string appendix_csv(const std::vector<AppendixRow>& rows) {
    std::string out = "Type,Ticker,Size,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt\n";
    for (const auto& row : rows) {
        const MomentSummary& m = row.stats;
        out += row.type;
        out += ',';
        out += row.ticker;
        out += ',';
        out += std::to_string(m.size);
        out += ',';
        out += stat_or_undefined(m.mean, m.size >= 1);
        out += ',';
        out += stat_or_undefined(m.min, m.size >= 1);
        out += ',';
        out += std::to_string(m.n_min);
        out += ',';
        out += stat_or_undefined(m.max, m.size >= 1);
        out += ',';
        out += std::to_string(m.n_max);
        out += ',';
        out += stat_or_undefined(m.std_dev, m.size >= 1);
        out += ',';
        out += stat_or_undefined(m.skewness, m.has_skewness);
        out += ',';
        out += stat_or_undefined(m.excess_kurtosis, m.has_excess_kurtosis);
        out += '\n';
    }
    return out;
}

}  // namespace mpslab::increments
