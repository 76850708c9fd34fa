#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpslab/contracts.hpp"

namespace mpslab::mps {

// One transaction: `units` contracts (buy > 0) at the chain's tick_index.
struct Action {
    std::size_t tick_index = 0;
    std::int64_t units = 0;
};

using Strategy = std::vector<Action>;

// Exact equation P&L in cents: every unit pays `cost_cents` per transaction
// and a non-flat net position is marked to the last price and closed at cost.
// Prices are integer delta-ticks, `tick_value_cents` is cents per delta per
// contract.  All arithmetic is overflow-checked.
std::int64_t pl(std::span<const Action> strategy,
                std::span<const std::int64_t> prices,
                std::int64_t tick_value_cents, std::int64_t cost_cents);

// Maximum profit strategy over positions {-1, 0, +1}, exact integer dynamic
// program.  Maximizes cash, then minimizes total units traded, so break-even
// and losing round trips are never emitted.  L and R differ only in which of
// several exactly-equal optima they return: L transacts as late and as little
// as possible, R as early and as much as possible.
enum class Mps0Variant { L, R };

Strategy mps0(std::span<const std::int64_t> prices, std::int64_t tick_value_cents,
              std::int64_t cost_cents, Mps0Variant variant = Mps0Variant::L);

struct AccountConfig {
    std::int64_t initial_account_cents = 0;
    std::int64_t initial_margin_cents = 0;
    std::int64_t maintenance_margin_cents = 0;
    std::int64_t tick_value_cents = 0;
    std::int64_t cost_cents = 0;  // per contract per transaction
};

// Margined account seeded with exactly one initial margin.
AccountConfig account_for(const ContractSpec& spec, std::int64_t cost_cents);

// MPS0 skeleton resized to the account: entries take every affordable
// contract (floor of equity over initial margin), reversals re-margin the
// equity net of the closing costs, the final transaction closes flat.
// Throws InsufficientAccount when the account cannot carry one contract.
Strategy mps1(std::span<const std::int64_t> prices, const AccountConfig& account);

// MPS1 plus pyramiding: between skeleton transactions every tick that leaves
// spare margin adds contracts in the direction of the open position.
Strategy mps2(std::span<const std::int64_t> prices, const AccountConfig& account);

// FIFO decomposition of a flat strategy into round-trip trades.  `units` is
// signed (long > 0); pl includes both transaction costs.  Trades are emitted
// in exit order; a partially consumed entry splits into several trades.
// Throws NonZeroNet unless the strategy ends flat.
struct Trade {
    std::size_t entry_index = 0;
    std::size_t exit_index = 0;
    std::int64_t entry_price_ticks = 0;
    std::int64_t exit_price_ticks = 0;
    std::int64_t units = 0;
    std::int64_t pl_cents = 0;
    std::int64_t duration_s = 0;
};

std::vector<Trade> aggregate_trades(std::span<const Action> strategy,
                                    std::span<const std::int64_t> prices,
                                    std::span<const std::int64_t> times_s,
                                    std::int64_t tick_value_cents,
                                    std::int64_t cost_cents);

// The report block: money in integer cents where exact, per-unit figures as
// means of per-trade pl/units.  Account equity is sampled once per tick after
// that tick's transaction; the drawdown peak is seeded with the initial
// account.
struct StrategySummary {
    std::int64_t total_pl_cents = 0;
    double total_pl_per_unit = 0;
    std::int64_t gross_profit_cents = 0;
    double gross_profit_per_unit = 0;
    std::int64_t gross_loss_cents = 0;
    double gross_loss_per_unit = 0;
    std::int64_t n_trades = 0;
    std::int64_t n_wins = 0;
    std::int64_t n_losses = 0;
    double average_profit = 0;  // dollars
    double average_profit_per_unit = 0;
    double average_loss = 0;
    double average_loss_per_unit = 0;
    std::int64_t largest_win_cents = 0;
    double largest_win_per_unit = 0;
    std::int64_t largest_loss_cents = 0;
    double largest_loss_per_unit = 0;
    std::int64_t max_consecutive_wins = 0;
    std::int64_t max_consecutive_losses = 0;
    std::int64_t max_consecutive_profit_cents = 0;
    double max_consecutive_profit_per_unit = 0;
    std::int64_t max_consecutive_loss_cents = 0;
    double max_consecutive_loss_per_unit = 0;
    std::int64_t elapsed_s = 0;
    std::int64_t position_s = 0;
    std::int64_t profit_s = 0;
    std::int64_t loss_s = 0;
    std::int64_t max_account_cents = 0;
    std::int64_t min_account_cents = 0;
    std::int64_t largest_drawdown_cents = 0;
    double average_drawdown_dollars = 0;
};

StrategySummary summarize(std::span<const Action> strategy,
                          std::span<const std::int64_t> prices,
                          std::span<const std::int64_t> times_s,
                          const AccountConfig& account);

// ACCOUNT and STATISTICS text blocks, dollars rendered with %g.
std::string summary_report(const std::string& ticker, const ContractSpec& spec,
                           const AccountConfig& account,
                           const StrategySummary& summary);

// Smallest cost (cents per contract per transaction) at which the maximum
// profit strategy does nothing: ceil of tick value times half the price range.
std::int64_t do_nothing_threshold(std::span<const std::int64_t> prices,
                                  std::int64_t tick_value_cents);

struct CostSweep {
    std::int64_t cost_cents = 0;
    std::int64_t pl_cents = 0;
    std::int64_t n_trades = 0;
    std::int64_t total_units = 0;  // sum of |units| over transactions
};

std::vector<CostSweep> cost_sweep(std::span<const std::int64_t> prices,
                                  std::span<const std::int64_t> times_s,
                                  std::int64_t tick_value_cents,
                                  std::span<const std::int64_t> costs_cents);

// `tick_index,time_s,units` rows for every transaction.
std::string spectrum_csv(std::span<const Action> strategy,
                         std::span<const std::int64_t> times_s);

}  // namespace mpslab::mps
