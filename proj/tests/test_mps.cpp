#include <algorithm>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "mpslab/chaos.hpp"
#include "mpslab/errors.hpp"
#include "mpslab/mps.hpp"
#include "support/brute_mps.hpp"

using namespace mpslab;
using namespace mpslab::mps;

namespace {

// ESZ13 daily closes, 2013-11-04 .. 2013-11-22, as delta-ticks.
const std::vector<std::int64_t> kClose{7052, 7027, 7056, 6979, 7067,
                                       7071, 7058, 7118, 7151, 7177,
                                       7157, 7140, 7119, 7175, 7204};

std::vector<std::int64_t> close_times() {
    const int days[] = {4, 5, 6, 7, 8, 11, 12, 13, 14, 15, 18, 19, 20, 21, 22};
    std::vector<std::int64_t> t;
    for (int d : days) t.push_back(static_cast<std::int64_t>(d - 4) * 86400);
    return t;
}

Strategy from_units(const std::vector<std::int64_t>& units) {
    Strategy s;
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i] != 0) s.push_back({i, units[i]});
    return s;
}

constexpr std::int64_t kTick = 1250;  // ES cents per delta
constexpr std::int64_t kCost = 466;   // $4.66 per contract per transaction

AccountConfig es_account() {
    AccountConfig a;
    a.initial_account_cents = 112750;
    a.initial_margin_cents = 112750;
    a.maintenance_margin_cents = 102500;
    a.tick_value_cents = kTick;
    a.cost_cents = kCost;
    return a;
}

}  // namespace

TEST_CASE("equation pl on the daily chain") {
    const Strategy buy_hold = from_units({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1});
    const Strategy emotional = from_units({1, 0, 0, 0, -1, 1, -1, 1, 0, 0, -1, 0, 0, 0, 0});
    CHECK(pl(buy_hold, kClose, kTick, kCost) == 189068);
    CHECK(pl(emotional, kClose, kTick, kCost) == 48454);

    // a non-flat strategy is marked to the last price and closed at cost
    const Strategy open_long{{0, 1}};
    CHECK(pl(open_long, kClose, kTick, kCost) ==
          kTick * (7204 - 7052) - 2 * kCost);

    CHECK(pl(Strategy{}, kClose, kTick, kCost) == 0);
    CHECK_THROWS_AS((void)pl(open_long, {}, kTick, kCost), EmptyChain);
    CHECK_THROWS_AS((void)pl(Strategy{{99, 1}}, kClose, kTick, kCost),
                    IndexOutOfRange);
    CHECK_THROWS_AS((void)pl(open_long, kClose, 0, kCost), BadParams);
    CHECK_THROWS_AS((void)pl(open_long, kClose, kTick, -1), BadParams);
}

TEST_CASE("mps0 on the daily chain") {
    const Strategy expected =
        from_units({-1, 2, -2, 2, 0, -2, 2, 0, 0, -2, 0, 0, 2, 0, -1});
    const Strategy got = mps0(kClose, kTick, kCost);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].tick_index == expected[i].tick_index);
        CHECK(got[i].units == expected[i].units);
    }
    CHECK(pl(got, kClose, kTick, kCost) == 615044);

    const std::vector<std::int64_t> single{7052};
    const std::vector<std::int64_t> flat{7052, 7052};
    CHECK(mps0({}, kTick, kCost).empty());
    CHECK(mps0(single, kTick, kCost).empty());
    // a move smaller than the round-trip cost is left alone
    CHECK(mps0(flat, kTick, kCost).empty());
}

TEST_CASE("mps0 tie variants on a plateau") {
    const std::vector<std::int64_t> plateau{7196, 7213, 7213, 7199};
    const Strategy left = mps0(plateau, kTick, kCost, Mps0Variant::L);
    const Strategy right = mps0(plateau, kTick, kCost, Mps0Variant::R);
    REQUIRE(left.size() == 3);
    REQUIRE(right.size() == 3);
    CHECK(left[1].tick_index == 1);   // L sells on the first touch of the high
    CHECK(right[1].tick_index == 2);  // R holds to the last touch
    CHECK(pl(left, plateau, kTick, kCost) == 36886);
    CHECK(pl(right, plateau, kTick, kCost) == 36886);
}

TEST_CASE("mps0 matches exhaustive search") {
    chaos::Lcg64 rng(555);
    const std::int64_t costs[] = {0, 1, 466};
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 9;
        std::vector<std::int64_t> prices(n);
        for (auto& p : prices)
            p = 7000 + static_cast<std::int64_t>(rng.next_u64() % 7);
        for (const std::int64_t c : costs) {
            const Strategy s = mps0(prices, kTick, c);
            const std::int64_t got = pl(s, prices, kTick, c);
            CHECK(got == max_pl_brute(prices, kTick, c));
            std::int64_t net = 0;
            for (const Action& a : s) net += a.units;
            CHECK(net == 0);
        }
    }
}

TEST_CASE("mps1 resizes the skeleton to the account") {
    const Strategy expected =
        from_units({-1, 2, -2, 3, 0, -6, 8, 0, 0, -14, 0, 0, 26, 0, -16});
    const Strategy got = mps1(kClose, es_account());
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].tick_index == expected[i].tick_index);
        CHECK(got[i].units == expected[i].units);
    }
    CHECK(pl(got, kClose, kTick, kCost) == 3442402);

    AccountConfig poor = es_account();
    poor.initial_account_cents = 112749;  // one cent short of a contract
    CHECK_THROWS_AS((void)mps1(kClose, poor), InsufficientAccount);
    CHECK(mps1({}, es_account()).empty());
}

TEST_CASE("mps2 pyramids between skeleton ticks") {
    const std::vector<std::int64_t> units{-1, 2,  -2, 3,  2,   -8, 9, 3,
                                          3,  -25, -3, -3, 45,  15, -40};
    const Strategy expected = from_units(units);
    const Strategy got = mps2(kClose, es_account());
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].tick_index == expected[i].tick_index);
        CHECK(got[i].units == expected[i].units);
    }
    CHECK(pl(got, kClose, kTick, kCost) == 5891076);
    CHECK(mps2({}, es_account()).empty());
}

TEST_CASE("fifo trade aggregation") {
    const std::vector<std::int64_t> p{100, 110, 105, 120};
    const std::vector<std::int64_t> t{0, 10, 25, 60};

    SUBCASE("two entries closed by one reversal") {
        const Strategy s{{0, 1}, {1, 1}, {2, -2}};
        const auto trades = aggregate_trades(s, p, t, 100, 5);
        REQUIRE(trades.size() == 2);
        CHECK(trades[0].entry_index == 0);
        CHECK(trades[0].duration_s == 25);
        CHECK(trades[1].entry_index == 1);
        CHECK(trades[1].duration_s == 15);
        CHECK(trades[0].pl_cents == 100 * 5 - 10);
        CHECK(trades[1].pl_cents == 100 * -5 - 10);
    }
    SUBCASE("partial consumption splits the entry") {
        const Strategy s{{0, 2}, {1, -1}, {2, -1}};
        const auto trades = aggregate_trades(s, p, t, 100, 5);
        REQUIRE(trades.size() == 2);
        CHECK(trades[0].units == 1);
        CHECK(trades[0].exit_index == 1);
        CHECK(trades[1].exit_index == 2);
    }
    SUBCASE("reversals chain sequentially") {
        const Strategy s{{0, 1}, {1, -2}, {2, 2}, {3, -1}};
        const auto trades = aggregate_trades(s, p, t, 100, 5);
        REQUIRE(trades.size() == 3);
        CHECK(trades[1].units == -1);  // the short leg of the first reversal
        CHECK(trades[2].exit_index == 3);
    }
    SUBCASE("non-flat strategies are rejected") {
        CHECK_THROWS_AS((void)aggregate_trades(Strategy{{0, 1}}, p, t, 100, 5),
                        NonZeroNet);
    }

    SUBCASE("trade pls add up to the strategy pl") {
        chaos::Lcg64 rng(808);
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t n = 4 + rng.next_u64() % 20;
            std::vector<std::int64_t> prices(n), times(n);
            for (std::size_t i = 0; i < n; ++i) {
                prices[i] = 900 + static_cast<std::int64_t>(rng.next_u64() % 200);
                times[i] = static_cast<std::int64_t>(i) * 7;
            }
            Strategy s;
            std::int64_t net = 0;
            for (std::size_t i = 0; i + 1 < n; ++i)
                if (rng.next_u64() % 3 == 0) {
                    const std::int64_t u =
                        static_cast<std::int64_t>(rng.next_u64() % 9) - 4;
                    if (u != 0) {
                        s.push_back({i, u});
                        net += u;
                    }
                }
            if (net != 0) s.push_back({n - 1, -net});
            const auto trades = aggregate_trades(s, prices, times, 25, 3);
            std::int64_t sum = 0;
            for (const Trade& tr : trades) sum += tr.pl_cents;
            CHECK(sum == pl(s, prices, 25, 3));
        }
    }
}

TEST_CASE("strategy summary on the daily chain") {
    const auto times = close_times();
    const AccountConfig acct = es_account();

    const Strategy mps0_s = mps0(kClose, kTick, kCost);
    const StrategySummary s0 = summarize(mps0_s, kClose, times, acct);
    CHECK(s0.total_pl_cents == 615044);
    CHECK(s0.n_trades == 8);
    CHECK(s0.n_wins == 8);
    CHECK(s0.n_losses == 0);
    CHECK(s0.largest_drawdown_cents == -466);
    CHECK(s0.min_account_cents == 112284);
    CHECK(s0.max_account_cents == 112750 + 615044);
    CHECK(s0.max_consecutive_wins == 8);
    CHECK(s0.max_consecutive_profit_cents == 615044);  // one unbroken streak
    CHECK(s0.elapsed_s == 18 * 86400);

    // expected per-trade gains in ticks, in exit order
    const std::int64_t gains[] = {25, 29, 77, 92, 13, 119, 58, 85};
    const auto trades = aggregate_trades(mps0_s, kClose, times, kTick, kCost);
    REQUIRE(trades.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(trades[i].pl_cents == kTick * gains[i] - 2 * kCost);

    const Strategy bh = from_units({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1});
    const StrategySummary sb = summarize(bh, kClose, times, acct);
    CHECK(sb.total_pl_cents == 189068);
    CHECK(sb.n_trades == 1);
    CHECK(sb.n_wins == 1);
    CHECK(sb.largest_drawdown_cents == -96250);
    CHECK(sb.min_account_cents == 21034);

    const Strategy emo = from_units({1, 0, 0, 0, -1, 1, -1, 1, 0, 0, -1, 0, 0, 0, 0});
    const StrategySummary se = summarize(emo, kClose, times, acct);
    CHECK(se.total_pl_cents == 48454);
    CHECK(se.n_trades == 3);
    CHECK(se.n_wins == 2);
    CHECK(se.n_losses == 1);
    CHECK(se.largest_drawdown_cents == -96250);
    CHECK(se.max_consecutive_wins == 1);
    CHECK(se.max_consecutive_losses == 1);
    CHECK(se.largest_loss_cents == -17182);

    const StrategySummary s2 = summarize(mps2(kClose, acct), kClose, times, acct);
    CHECK(s2.total_pl_cents == 5891076);
    CHECK(s2.n_trades == 14);
    CHECK(s2.n_wins == 14);
    CHECK(s2.largest_drawdown_cents == -466);
}

TEST_CASE("summary report layout") {
    const auto times = close_times();
    const AccountConfig acct = es_account();
    ContractSpec spec = *find_contract("ES");
    const StrategySummary s = summarize(mps0(kClose, kTick, kCost), kClose, times, acct);
    const std::string report = summary_report("ESZ13", spec, acct, s);
    auto acct_row = [](const char* name, const char* value) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-20s= %s\n", name, value);
        return std::string(buf);
    };
    auto stat_row = [](const char* name, const char* value) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-33s= %s\n", name, value);
        return std::string(buf);
    };
    CHECK(report.rfind("ACCOUNT\n", 0) == 0);
    CHECK(report.find(acct_row("Ticker", "ESZ13")) != std::string::npos);
    CHECK(report.find(acct_row("Initial account", "1127.5")) != std::string::npos);
    CHECK(report.find(acct_row("Maintenance margin", "1025")) != std::string::npos);
    CHECK(report.find(acct_row("Point value", "50")) != std::string::npos);
    CHECK(report.find("\nSTATISTICS\n") != std::string::npos);
    CHECK(report.find(stat_row("Total P&L", "6150.44")) != std::string::npos);
    CHECK(report.find(stat_row("Total number of trades", "8")) != std::string::npos);
    CHECK(report.find(stat_row("Largest drawdown", "-4.66")) != std::string::npos);
    // every statistic row aligns the '=' at the same column
    std::size_t pos = report.find("STATISTICS\n") + 11;
    int rows = 0;
    while (pos < report.size()) {
        const std::size_t eol = report.find('\n', pos);
        CHECK(report.substr(pos, eol - pos).find("= ") == 33);
        pos = eol + 1;
        ++rows;
    }
    CHECK(rows == 31);
}

TEST_CASE("do-nothing threshold") {
    const std::vector<std::int64_t> two{7168, 7213};  // 1792.00 / 1803.25
    CHECK(do_nothing_threshold(two, kTick) == 28125);
    CHECK(mps0(two, kTick, 28125).empty());
    const Strategy cheap = mps0(two, kTick, 28124);
    REQUIRE(cheap.size() == 2);
    CHECK(pl(cheap, two, kTick, 28124) == 2);  // the two-cent trade

    CHECK(do_nothing_threshold(kClose, kTick) == (7204 - 6979) * kTick / 2);
    CHECK_THROWS_AS((void)do_nothing_threshold({}, kTick), EmptyChain);
}

TEST_CASE("cost sweep") {
    const auto times = close_times();
    const std::vector<std::int64_t> costs{0, 1, 466, 2000};
    const auto rows = cost_sweep(kClose, times, kTick, costs);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].cost_cents == 0);
    CHECK(rows[2].pl_cents == 615044);
    CHECK(rows[2].n_trades == 8);
    CHECK(rows[2].total_units == 16);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        // stripping the costs from a sweep strategy is exactly linear, and
        // no costed strategy can beat the free optimum
        CHECK(rows[i].pl_cents + rows[i].cost_cents * rows[i].total_units <=
              rows[0].pl_cents);
        if (i > 0) CHECK(rows[i].pl_cents <= rows[i - 1].pl_cents);
    }
    const Strategy at_cost = mps0(kClose, kTick, kCost);
    CHECK(pl(at_cost, kClose, kTick, 0) - pl(at_cost, kClose, kTick, kCost) ==
          kCost * 16);
    CHECK_THROWS_AS((void)cost_sweep(kClose, times, kTick, std::vector<std::int64_t>{5, 5}),
                    BadParams);
}

TEST_CASE("spectrum csv") {
    const auto times = close_times();
    const Strategy s{{0, -1}, {14, 1}};
    const std::string csv = spectrum_csv(s, times);
    CHECK(csv == "tick_index,time_s,units\n0,0,-1\n14,1555200,1\n");
}

TEST_CASE("account from contract") {
    const AccountConfig a = account_for(*find_contract("ES"), kCost);
    CHECK(a.initial_account_cents == 112750);
    CHECK(a.initial_margin_cents == 112750);
    CHECK(a.maintenance_margin_cents == 102500);
    CHECK(a.tick_value_cents == 1250);
    CHECK(a.cost_cents == 466);
}
