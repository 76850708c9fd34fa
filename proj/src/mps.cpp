#include "mpslab/mps.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

#include "mpslab/checked.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::mps {

namespace {

void validate_costs(std::int64_t tick_value_cents, std::int64_t cost_cents) {
    if (tick_value_cents <= 0) throw BadParams("tick value must be positive");
    if (cost_cents < 0) throw BadParams("cost must be non-negative");
}

void validate_account(const AccountConfig& a) {
    validate_costs(a.tick_value_cents, a.cost_cents);
    if (a.initial_margin_cents <= 0) throw BadParams("initial margin must be positive");
    if (a.initial_account_cents < 0) throw BadParams("account must be non-negative");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

std::int64_t sign(std::int64_t v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

// Candidate source states per target state {-1, 0, +1}, in tie preference
// order.  L tries the cheapest transition first (u = 0, then |u| = 1, 2), R
// the largest first; ties on the full (cash, units) key keep the earlier
// candidate, which is what distinguishes the two variants.
constexpr int kSourceOrder[2][3][3] = {
    // L: t = -1 -> s in {-1, 0, +1}; t = 0; t = +1
    {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}},
    // R
    {{2, 1, 0}, {0, 2, 1}, {0, 1, 2}},
};

struct DpVal {
    std::int64_t cash = 0;
    std::int64_t units = 0;
    bool ok = false;
};

// Transaction cost and cash delta of moving between small positions at P.
std::int64_t transact_cash(std::int64_t cash, std::int64_t kp, std::int64_t cost,
                           std::int64_t u) {
    const std::int64_t au = u < 0 ? -u : u;
    return checked_sub(cash, checked_add(checked_mul(kp, u), checked_mul(cost, au)));
}

}  // namespace

std::int64_t pl(std::span<const Action> strategy,
                std::span<const std::int64_t> prices,
                std::int64_t tick_value_cents, std::int64_t cost_cents) {
    validate_costs(tick_value_cents, cost_cents);
    if (strategy.empty()) return 0;
    if (prices.empty()) throw EmptyChain("pl needs a price chain");
    std::int64_t sum_u = 0, sum_pu = 0, sum_abs = 0;
    for (const Action& a : strategy) {
        if (a.tick_index >= prices.size())
            throw IndexOutOfRange("action index " + std::to_string(a.tick_index) +
                                  " beyond chain of " + std::to_string(prices.size()));
        sum_u = checked_add(sum_u, a.units);
        sum_pu = checked_add(sum_pu, checked_mul(prices[a.tick_index], a.units));
        sum_abs = checked_add(sum_abs, checked_abs(a.units));
    }
    const std::int64_t price_term =
        checked_sub(checked_mul(prices.back(), sum_u), sum_pu);
    return checked_sub(
        checked_mul(tick_value_cents, price_term),
        checked_mul(cost_cents, checked_add(sum_abs, checked_abs(sum_u))));
}

Strategy mps0(std::span<const std::int64_t> prices, std::int64_t tick_value_cents,
              std::int64_t cost_cents, Mps0Variant variant) {
    validate_costs(tick_value_cents, cost_cents);
    const std::size_t n = prices.size();
    if (n == 0) return {};

    const auto& order = kSourceOrder[variant == Mps0Variant::L ? 0 : 1];
    std::vector<std::int8_t> parent(n * 3, -1);
    DpVal cur[3], nxt[3];
    cur[1].ok = true;  // flat, zero cash, zero units before the first tick

    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t kp = checked_mul(tick_value_cents, prices[i]);
        for (int t = 0; t < 3; ++t) {
            DpVal best;
            std::int8_t best_s = -1;
            for (int s : order[t]) {
                if (!cur[s].ok) continue;
                DpVal cand;
                cand.cash = transact_cash(cur[s].cash, kp, cost_cents, t - s);
                cand.units = cur[s].units + std::abs(t - s);
                cand.ok = true;
                if (!best.ok || cand.cash > best.cash ||
                    (cand.cash == best.cash && cand.units < best.units)) {
                    best = cand;
                    best_s = static_cast<std::int8_t>(s);
                }
            }
            nxt[t] = best;
            parent[i * 3 + t] = best_s;
        }
        std::copy(nxt, nxt + 3, cur);
    }

    Strategy actions;
    int t = 1;  // must end flat
    for (std::size_t i = n; i-- > 0;) {
        const int s = parent[i * 3 + t];
        if (t - s != 0) actions.push_back({i, t - s});
        t = s;
    }
    std::reverse(actions.begin(), actions.end());
    return actions;
}

AccountConfig account_for(const ContractSpec& spec, std::int64_t cost_cents) {
    AccountConfig a;
    a.initial_account_cents = spec.initial_margin_cents;
    a.initial_margin_cents = spec.initial_margin_cents;
    a.maintenance_margin_cents = spec.maintenance_margin_cents;
    a.tick_value_cents = spec.tick_value_cents;
    a.cost_cents = cost_cents;
    return a;
}

namespace {

// Shared skeleton-transaction logic of MPS1/MPS2.  `skel_pos` is the unit
// position of the skeleton before the transaction, `skel_units` its unit
// transaction; returns the resized units for the actual position `pos`.
std::int64_t resize_skeleton_action(std::int64_t skel_pos, std::int64_t skel_units,
                                    std::int64_t pos, std::int64_t cash,
                                    std::int64_t kp, const AccountConfig& acct) {
    const std::int64_t equity = checked_add(cash, checked_mul(kp, pos));
    const std::int64_t new_skel = skel_pos + skel_units;
    if (skel_pos == 0) {  // entry
        const std::int64_t m = floor_div(equity, acct.initial_margin_cents);
        if (m < 1)
            throw InsufficientAccount("equity " + std::to_string(equity) +
                                      " cents cannot margin one contract");
        return skel_units > 0 ? m : -m;
    }
    if (new_skel == 0) return checked_sub(0, pos);  // final close, no sizing
    // reversal: what remains after paying the closing costs is re-margined
    const std::int64_t free =
        checked_sub(equity, checked_mul(acct.cost_cents, checked_abs(pos)));
    const std::int64_t m = floor_div(free, acct.initial_margin_cents);
    if (m < 1)
        throw InsufficientAccount("equity " + std::to_string(equity) +
                                  " cents cannot margin a reversal");
    return checked_sub(new_skel > 0 ? m : -m, pos);
}

}  // namespace

Strategy mps1(std::span<const std::int64_t> prices, const AccountConfig& account) {
    validate_account(account);
    const Strategy skel =
        mps0(prices, account.tick_value_cents, account.cost_cents, Mps0Variant::L);
    Strategy out;
    out.reserve(skel.size());
    std::int64_t cash = account.initial_account_cents, pos = 0, skel_pos = 0;
    for (const Action& a : skel) {
        const std::int64_t kp =
            checked_mul(account.tick_value_cents, prices[a.tick_index]);
        const std::int64_t u =
            resize_skeleton_action(skel_pos, a.units, pos, cash, kp, account);
        cash = transact_cash(cash, kp, account.cost_cents, u);
        pos = checked_add(pos, u);
        skel_pos += a.units;
        out.push_back({a.tick_index, u});
    }
    return out;
}

Strategy mps2(std::span<const std::int64_t> prices, const AccountConfig& account) {
    validate_account(account);
    const Strategy skel =
        mps0(prices, account.tick_value_cents, account.cost_cents, Mps0Variant::L);
    if (skel.empty()) return {};
    Strategy out;
    std::int64_t cash = account.initial_account_cents, pos = 0, skel_pos = 0;
    std::size_t sj = 0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const std::int64_t kp = checked_mul(account.tick_value_cents, prices[i]);
        std::int64_t u = 0;
        if (sj < skel.size() && skel[sj].tick_index == i) {
            u = resize_skeleton_action(skel_pos, skel[sj].units, pos, cash, kp,
                                       account);
            skel_pos += skel[sj].units;
            ++sj;
        } else if (pos != 0) {
            // pyramid: lift the position to every contract the equity margins
            const std::int64_t equity = checked_add(cash, checked_mul(kp, pos));
            const std::int64_t add =
                floor_div(equity, account.initial_margin_cents) - checked_abs(pos);
            if (add > 0) u = sign(pos) * add;
        }
        if (u != 0) {
            cash = transact_cash(cash, kp, account.cost_cents, u);
            pos = checked_add(pos, u);
            out.push_back({i, u});
        }
    }
    return out;
}

std::vector<Trade> aggregate_trades(std::span<const Action> strategy,
                                    std::span<const std::int64_t> prices,
                                    std::span<const std::int64_t> times_s,
                                    std::int64_t tick_value_cents,
                                    std::int64_t cost_cents) {
    validate_costs(tick_value_cents, cost_cents);
    if (times_s.size() != prices.size())
        throw BadParams("times and prices differ in length");
    struct Leg {
        std::size_t entry;
        std::int64_t units;
        std::int64_t dir;
    };
    std::deque<Leg> open;
    std::vector<Trade> trades;
    for (const Action& a : strategy) {
        if (a.tick_index >= prices.size())
            throw IndexOutOfRange("action index beyond chain");
        if (a.units == 0) continue;
        std::int64_t rem = checked_abs(a.units);
        const std::int64_t dir = sign(a.units);
        while (rem > 0) {
            if (open.empty() || open.front().dir == dir) {
                open.push_back({a.tick_index, rem, dir});
                rem = 0;
            } else {
                Leg& f = open.front();
                const std::int64_t q = std::min(rem, f.units);
                Trade t;
                t.entry_index = f.entry;
                t.exit_index = a.tick_index;
                t.entry_price_ticks = prices[f.entry];
                t.exit_price_ticks = prices[a.tick_index];
                t.units = f.dir > 0 ? q : -q;
                const std::int64_t move =
                    checked_mul(checked_sub(t.exit_price_ticks, t.entry_price_ticks),
                                f.dir);
                t.pl_cents = checked_sub(checked_mul(tick_value_cents,
                                                     checked_mul(move, q)),
                                         checked_mul(2 * cost_cents, q));
                t.duration_s = checked_sub(times_s[a.tick_index], times_s[f.entry]);
                trades.push_back(t);
                f.units -= q;
                rem -= q;
                if (f.units == 0) open.pop_front();
            }
        }
    }
    if (!open.empty()) throw NonZeroNet("strategy does not end flat");
    return trades;
}

StrategySummary summarize(std::span<const Action> strategy,
                          std::span<const std::int64_t> prices,
                          std::span<const std::int64_t> times_s,
                          const AccountConfig& account) {
    validate_account(account);
    if (prices.empty()) throw EmptyChain("summarize needs a price chain");
    if (times_s.size() != prices.size())
        throw BadParams("times and prices differ in length");

    const std::vector<Trade> trades = aggregate_trades(
        strategy, prices, times_s, account.tick_value_cents, account.cost_cents);

    StrategySummary s;
    s.total_pl_cents = pl(strategy, prices, account.tick_value_cents,
                          account.cost_cents);
    s.n_trades = static_cast<std::int64_t>(trades.size());
    s.elapsed_s = checked_sub(times_s.back(), times_s.front());

    std::int64_t streak_pl = 0;   // cents, sign of the current streak
    double streak_pu = 0;         // dollars per unit
    std::int64_t streak_len = 0;  // > 0 wins, < 0 losses
    auto close_streak = [&] {
        if (streak_len > 0) {
            s.max_consecutive_wins = std::max(s.max_consecutive_wins, streak_len);
            s.max_consecutive_profit_cents =
                std::max(s.max_consecutive_profit_cents, streak_pl);
            s.max_consecutive_profit_per_unit =
                std::max(s.max_consecutive_profit_per_unit, streak_pu);
        } else if (streak_len < 0) {
            s.max_consecutive_losses = std::max(s.max_consecutive_losses, -streak_len);
            s.max_consecutive_loss_cents =
                std::min(s.max_consecutive_loss_cents, streak_pl);
            s.max_consecutive_loss_per_unit =
                std::min(s.max_consecutive_loss_per_unit, streak_pu);
        }
        streak_pl = 0;
        streak_pu = 0;
        streak_len = 0;
    };

    for (const Trade& t : trades) {
        const std::int64_t units = checked_abs(t.units);
        const double per_unit = t.pl_cents / 100.0 / static_cast<double>(units);
        s.total_pl_per_unit += per_unit;
        s.position_s = checked_add(s.position_s, t.duration_s);
        if (t.pl_cents > 0) {
            s.gross_profit_cents = checked_add(s.gross_profit_cents, t.pl_cents);
            s.gross_profit_per_unit += per_unit;
            ++s.n_wins;
            s.profit_s = checked_add(s.profit_s, t.duration_s);
            if (streak_len < 0) close_streak();
            ++streak_len;
            streak_pl += t.pl_cents;
            streak_pu += per_unit;
        } else if (t.pl_cents < 0) {
            s.gross_loss_cents = checked_add(s.gross_loss_cents, t.pl_cents);
            s.gross_loss_per_unit += per_unit;
            ++s.n_losses;
            s.loss_s = checked_add(s.loss_s, t.duration_s);
            if (streak_len > 0) close_streak();
            --streak_len;
            streak_pl += t.pl_cents;
            streak_pu += per_unit;
        } else {
            close_streak();  // break-even trades interrupt both streaks
        }
        s.largest_win_cents = std::max(s.largest_win_cents, t.pl_cents);
        s.largest_loss_cents = std::min(s.largest_loss_cents, t.pl_cents);
        s.largest_win_per_unit = std::max(s.largest_win_per_unit, per_unit);
        s.largest_loss_per_unit = std::min(s.largest_loss_per_unit, per_unit);
    }
    close_streak();
    if (s.n_wins > 0) {
        s.average_profit = s.gross_profit_cents / 100.0 / s.n_wins;
        s.average_profit_per_unit = s.gross_profit_per_unit / s.n_wins;
    }
    if (s.n_losses > 0) {
        s.average_loss = s.gross_loss_cents / 100.0 / s.n_losses;
        s.average_loss_per_unit = s.gross_loss_per_unit / s.n_losses;
    }

    // equity path: one sample per tick, after that tick's transactions
    std::int64_t cash = account.initial_account_cents, pos = 0;
    std::int64_t run_max = account.initial_account_cents;
    std::int64_t max_e = account.initial_account_cents;
    std::int64_t min_e = 0, largest_dd = 0;
    bool have_sample = false;
    double dd_sum = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const std::int64_t kp = checked_mul(account.tick_value_cents, prices[i]);
        while (j < strategy.size() && strategy[j].tick_index == i) {
            cash = transact_cash(cash, kp, account.cost_cents, strategy[j].units);
            pos = checked_add(pos, strategy[j].units);
            ++j;
        }
        const std::int64_t e = checked_add(cash, checked_mul(kp, pos));
        run_max = std::max(run_max, e);
        max_e = std::max(max_e, e);
        min_e = have_sample ? std::min(min_e, e) : e;
        have_sample = true;
        const std::int64_t dd = checked_sub(e, run_max);
        largest_dd = std::min(largest_dd, dd);
        dd_sum += static_cast<double>(dd);
    }
    if (j < strategy.size()) throw BadParams("strategy indices must be ascending");
    s.max_account_cents = max_e;
    s.min_account_cents = min_e;
    s.largest_drawdown_cents = largest_dd;
    s.average_drawdown_dollars =
        dd_sum / static_cast<double>(prices.size()) / 100.0;
    return s;
}

namespace {

std::string money(std::int64_t cents) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", static_cast<double>(cents) / 100.0);
    return buf;
}

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string count(std::int64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
}

void row(std::string& out, int width, const char* name, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-*s= %s\n", width, name, value.c_str());
    out += buf;
}

}  // namespace

std::string summary_report(const std::string& ticker, const ContractSpec& spec,
                           const AccountConfig& account,
                           const StrategySummary& s) {
    std::string out = "ACCOUNT\n";
    row(out, 20, "Ticker", ticker);
    row(out, 20, "Initial account", money(account.initial_account_cents));
    row(out, 20, "Initial margin", money(account.initial_margin_cents));
    row(out, 20, "Maintenance margin", money(account.maintenance_margin_cents));
    row(out, 20, "Point value", money(spec.point_value_cents_per_unit));
    out += "\nSTATISTICS\n";
    row(out, 33, "Total P&L", money(s.total_pl_cents));
    row(out, 33, "Total P&L/unit", real(s.total_pl_per_unit));
    row(out, 33, "Gross profit", money(s.gross_profit_cents));
    row(out, 33, "Gross profit/unit", real(s.gross_profit_per_unit));
    row(out, 33, "Gross loss", money(s.gross_loss_cents));
    row(out, 33, "Gross loss/unit", real(s.gross_loss_per_unit));
    row(out, 33, "Total number of trades", count(s.n_trades));
    row(out, 33, "Number of winning trades", count(s.n_wins));
    row(out, 33, "Number of losing trades", count(s.n_losses));
    row(out, 33, "Average profit", real(s.average_profit));
    row(out, 33, "Average profit/unit", real(s.average_profit_per_unit));
    row(out, 33, "Average loss", real(s.average_loss));
    row(out, 33, "Average loss/unit", real(s.average_loss_per_unit));
    row(out, 33, "Largest winning trade", money(s.largest_win_cents));
    row(out, 33, "Largest winning trade/unit", real(s.largest_win_per_unit));
    row(out, 33, "Largest losing trade", money(s.largest_loss_cents));
    row(out, 33, "Largest losing trade/unit", real(s.largest_loss_per_unit));
    row(out, 33, "Max number of consecutive wins", count(s.max_consecutive_wins));
    row(out, 33, "Max number of consecutive losses",
        count(s.max_consecutive_losses));
    row(out, 33, "Maximum consecutive profit",
        money(s.max_consecutive_profit_cents));
    row(out, 33, "Maximum consecutive profit/unit",
        real(s.max_consecutive_profit_per_unit));
    row(out, 33, "Maximum consecutive loss", money(s.max_consecutive_loss_cents));
    row(out, 33, "Maximum consecutive loss/unit",
        real(s.max_consecutive_loss_per_unit));
    row(out, 33, "Total elapsed seconds", count(s.elapsed_s));
    row(out, 33, "Total trade seconds on positions", count(s.position_s));
    row(out, 33, "Total trade profit seconds", count(s.profit_s));
    row(out, 33, "Total trade loss seconds", count(s.loss_s));
    row(out, 33, "Maximum account value", money(s.max_account_cents));
    row(out, 33, "Minimum account value", money(s.min_account_cents));
    row(out, 33, "Largest drawdown", money(s.largest_drawdown_cents));
    row(out, 33, "Average drawdown", real(s.average_drawdown_dollars));
    return out;
}

std::int64_t do_nothing_threshold(std::span<const std::int64_t> prices,
                                  std::int64_t tick_value_cents) {
    if (tick_value_cents <= 0) throw BadParams("tick value must be positive");
    if (prices.empty()) throw EmptyChain("threshold needs a price chain");
    const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
    const std::int64_t spread = checked_mul(tick_value_cents,
                                            checked_sub(*hi, *lo));
    return (spread + 1) / 2;  // exact ceil of spread / 2
}

std::vector<CostSweep> cost_sweep(std::span<const std::int64_t> prices,
                                  std::span<const std::int64_t> times_s,
                                  std::int64_t tick_value_cents,
                                  std::span<const std::int64_t> costs_cents) {
    for (std::size_t i = 0; i < costs_cents.size(); ++i)
        if (costs_cents[i] < 0 || (i > 0 && costs_cents[i] <= costs_cents[i - 1]))
            throw BadParams("cost grid must be non-negative and ascending");
    std::vector<CostSweep> out;
    out.reserve(costs_cents.size());
    for (const std::int64_t c : costs_cents) {
        const Strategy strat = mps0(prices, tick_value_cents, c);
        CostSweep row;
        row.cost_cents = c;
        row.pl_cents = pl(strat, prices, tick_value_cents, c);
        row.n_trades = static_cast<std::int64_t>(
            aggregate_trades(strat, prices, times_s, tick_value_cents, c).size());
        for (const Action& a : strat)
            row.total_units = checked_add(row.total_units, checked_abs(a.units));
        out.push_back(row);
    }
    return out;
}

std::string spectrum_csv(std::span<const Action> strategy,
                         std::span<const std::int64_t> times_s) {
    std::string out = "tick_index,time_s,units\n";
    char buf[96];
    for (const Action& a : strategy) {
        if (a.tick_index >= times_s.size())
            throw IndexOutOfRange("action index beyond time series");
        std::snprintf(buf, sizeof buf, "%zu,%lld,%lld\n", a.tick_index,
                      static_cast<long long>(times_s[a.tick_index]),
                      static_cast<long long>(a.units));
        out += buf;
    }
    return out;
}

}  // namespace mpslab::mps
