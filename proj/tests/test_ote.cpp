#include <sstream>
#include <vector>

#include <doctest.h>

#include "mpslab/contracts.hpp"
#include "mpslab/errors.hpp"
#include "mpslab/ote.hpp"

using namespace mpslab;
using namespace mpslab::ote;

namespace {

constexpr std::int64_t kTick = 1250;
const CostPair kEs{4999, 466};  // $49.99 filtration, $4.66 actual

std::vector<OteElement> chain_elements() {
    const std::vector<std::int64_t> prices{7000, 7020, 7005, 7030};
    const std::vector<std::int64_t> times{0, 10, 25, 60};
    return extract_otes(prices, times, kTick, kEs);
}

}  // namespace

TEST_CASE("elements of a single chain") {
    const auto es = chain_elements();
    REQUIRE(es.size() == 3);

    CHECK(es[0].direction == Direction::Bote);
    CHECK(es[1].direction == Direction::Sote);
    CHECK(es[2].direction == Direction::Bote);

    CHECK(es[0].profit_cents == kTick * 20 - 932);
    CHECK(es[1].profit_cents == kTick * 15 - 932);
    CHECK(es[2].profit_cents == kTick * 25 - 932);

    CHECK(es[0].duration_s == 10);
    CHECK(es[1].duration_s == 15);
    CHECK(es[2].duration_s == 35);

    CHECK(es[1].entry_index == 1);
    CHECK(es[1].exit_index == 2);
    CHECK(es[1].entry_price_ticks == 7020);

    for (const OteElement& e : es) {
        CHECK(e.profit_cents > 0);
        CHECK(e.session == 0);
        // every element profit sits on the lattice
        CHECK_NOTHROW((void)ote_index(e.profit_cents, kTick, kEs));
    }

    // a quiet chain yields nothing
    const std::vector<std::int64_t> quiet{7000, 7002, 7001};
    const std::vector<std::int64_t> qt{0, 1, 2};
    CHECK(extract_otes(quiet, qt, kTick, kEs).empty());

    CHECK_THROWS_AS((void)extract_otes(quiet, std::vector<std::int64_t>{0, 1},
                                       kTick, kEs),
                    BadParams);
    CHECK_THROWS_AS((void)extract_otes(quiet, qt, kTick, CostPair{466, 4999}),
                    BadParams);
    CHECK_THROWS_AS((void)extract_otes(quiet, qt, kTick, CostPair{0, 0}), BadParams);
}

TEST_CASE("per-session extraction pauses the clock between ranges") {
    const ContractSpec spec = *find_contract("ES");
    const ticks::TickSeries series = ticks::parse_time_sales(
        "2013-11-04 08:30:00.000-06 1750.00 1 T\n"
        "2013-11-04 08:30:10.000-06 1752.50 1 T\n"
        "2013-11-04 10:00:00.000-06 1757.50 1 T\n"
        "2013-11-05 08:30:00.000-06 1775.00 1 T\n"
        "2013-11-05 08:35:00.000-06 1762.50 1 T\n",
        spec);
    std::istringstream cal(
        "2013-11-04,08:30:00,09:00:00,10:00:00,11:00:00\n"
        "2013-11-05,08:30:00,15:14:59\n");
    const ticks::SessionIndex index =
        ticks::segment_sessions(series, ticks::parse_calendar(cal));

    const auto es = extract_otes(series, index, spec.tick_value_cents, kEs);
    REQUIRE(es.size() == 2);

    CHECK(es[0].session == 0);
    CHECK(es[0].entry_index == 0);
    CHECK(es[0].exit_index == 2);  // global tick index across the range break
    CHECK(es[0].direction == Direction::Bote);
    CHECK(es[0].profit_cents == kTick * 30 - 932);
    CHECK(es[0].duration_s == 10);  // the 90-minute pause does not count

    CHECK(es[1].session == 1);
    CHECK(es[1].direction == Direction::Sote);
    CHECK(es[1].profit_cents == kTick * 50 - 932);
    CHECK(es[1].duration_s == 300);
}

TEST_CASE("profit lattice") {
    const PlLattice lat = pl_lattice(kTick, kEs);
    CHECK(lat.n_min == 8);
    CHECK(lat.pl_min_cents == 9068);
    CHECK(lat.step_cents == 1250);

    // the cheapest filtrations of the published sweep
    CHECK(pl_lattice(kTick, CostPair{624, 466}).pl_min_cents == 318);
    CHECK(pl_lattice(kTick, CostPair{1249, 466}).pl_min_cents == 1568);

    CHECK(ote_index(9068, kTick, kEs) == 0);
    CHECK(ote_index(24068, kTick, kEs) == 12);
    CHECK_THROWS_AS((void)ote_index(9067, kTick, kEs), DomainError);
    CHECK_THROWS_AS((void)ote_index(9069, kTick, kEs), DomainError);
}

TEST_CASE("mapping elements between contracts") {
    const CostPair zc{4999, 533};  // same filtration, $5.33 actual
    CHECK(pl_lattice(kTick, zc).pl_min_cents == 8934);
    // equal tick values shift by twice the cost difference
    CHECK(map_contracts(8934, kTick, zc, kTick, kEs) == 9068);
    CHECK(map_contracts(8934 + 3 * 1250, kTick, zc, kTick, kEs) == 9068 + 3 * 1250);
    CHECK(map_contracts(9068, kTick, kEs, kTick, zc) == 8934);

    // different tick value rescales the step
    const CostPair half{4999, 466};
    CHECK(pl_lattice(625, half).n_min == 16);
    CHECK(map_contracts(9068 + 1250, kTick, kEs, 625, half) == 9068 + 625);

    CHECK_THROWS_AS((void)map_contracts(9068, kTick, kEs, kTick, CostPair{5000, 466}),
                    MismatchedFCost);
    CHECK_THROWS_AS((void)map_contracts(9069, kTick, kEs, kTick, zc), DomainError);
}

TEST_CASE("element statistics") {
    const auto es = chain_elements();
    const OteStats s = ote_stats(es, 2);
    CHECK(s.profit.size == 3);
    CHECK(s.profit.mean == doctest::Approx(24068.0));
    CHECK(s.profit.std_dev == doctest::Approx(6250.0));
    CHECK(s.profit.skewness == doctest::Approx(0.0));
    CHECK(s.profit.min == 17818.0);
    CHECK(s.profit.max == 30318.0);
    CHECK(s.duration.mean == doctest::Approx(20.0));
    CHECK(s.mean_per_session == doctest::Approx(1.5));
    CHECK(s.profit_ecdf.steps.back().prob == 1.0);
    CHECK(s.profit_epdf.size() == 3);

    CHECK_THROWS_AS((void)ote_stats({}, 1), EmptyElements);
    CHECK_THROWS_AS((void)ote_stats(es, 0), BadParams);
}

TEST_CASE("birth strategy expectation") {
    CHECK(birth_strategy_expectation(19598.0, kTick, kEs) ==
          doctest::Approx(-402.0));

    // 576 elements at lattice index 8 and 424 at index 9 average exactly 195.98
    std::vector<OteElement> flock;
    for (int i = 0; i < 1000; ++i) {
        OteElement e;
        e.profit_cents = i < 576 ? 19068 : 20318;
        flock.push_back(e);
    }
    CHECK(birth_strategy_expectation(flock, kTick, kEs) == doctest::Approx(-402.0));
    CHECK_THROWS_AS(
        (void)birth_strategy_expectation(std::span<const OteElement>{}, kTick, kEs),
        EmptyElements);
}

TEST_CASE("sweep table csv") {
    const auto es = chain_elements();
    OteTableRow row{kEs.f_cost_cents, ote_stats(es, 1).profit};
    const std::string text = ote_table_csv(std::vector<OteTableRow>{row}, true);
    CHECK(text ==
          "F-Cost,N_OTE,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt\n"
          "49.99,3,240.68,178.18,1,303.18,1,62.5,0,undefined\n");

    OteTableRow dur{kEs.f_cost_cents, ote_stats(es, 1).duration};
    const std::string dtext = ote_table_csv(std::vector<OteTableRow>{dur}, false);
    CHECK(dtext.find("49.99,3,20,10,1,35,1,") != std::string::npos);
}
