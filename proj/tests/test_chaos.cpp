#include <cmath>
#include <vector>

#include <doctest.h>

#include "mpslab/chaos.hpp"
#include "mpslab/errors.hpp"

using namespace mpslab;
using namespace mpslab::chaos;

TEST_CASE("lcg stream") {
    Lcg64 a(7);
    Lcg64 b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Lcg64 c(8);
    CHECK(c.next_u64() != Lcg64(7).next_u64());
    CHECK(Lcg64::kDefaultSeed == 21325476);

    Lcg64 u;
    for (int i = 0; i < 10000; ++i) {
        const double x = u.next_unit();
        CHECK(x > 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("box-muller consumes two uniforms per normal") {
    Lcg64 a(42);
    Lcg64 b(42);
    for (int i = 0; i < 5; ++i) (void)box_muller(a);
    for (int i = 0; i < 10; ++i) (void)b.next_unit();
    CHECK(a.next_u64() == b.next_u64());

    Lcg64 rng(1234);
    double sum = 0.0, sum2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double z = box_muller(rng);
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("bachelier walk") {
    SUBCASE("deterministic ramp at sigma zero") {
        const RealSeries s = simulate_bachelier(100.0, 0.25, 0.0, 5, 750.3);
        REQUIRE(s.prices.size() == 5);
        CHECK(s.prices[0] == 100.0);
        CHECK(s.prices[4] == doctest::Approx(101.0).epsilon(1e-15));
        CHECK(s.times_s == std::vector<std::int64_t>{0, 750, 1500, 2250, 3001});
    }
    SUBCASE("seed reproducibility") {
        const RealSeries a = simulate_bachelier(0.0, 0.0, 1.0, 64, 1.0, 99);
        const RealSeries b = simulate_bachelier(0.0, 0.0, 1.0, 64, 1.0, 99);
        const RealSeries c = simulate_bachelier(0.0, 0.0, 1.0, 64, 1.0, 100);
        CHECK(a.prices == b.prices);
        CHECK(a.prices != c.prices);
    }
    CHECK_THROWS_AS((void)simulate_bachelier(0, 0, 1.0, 1, 1.0), BadParams);
    CHECK_THROWS_AS((void)simulate_bachelier(0, 0, -1.0, 10, 1.0), BadParams);
    CHECK_THROWS_AS((void)simulate_bachelier(0, 0, 1.0, 10, 0.0), BadParams);
}

TEST_CASE("embedding") {
    const std::vector<double> series{1, 2, 3, 4, 5, 6, 7};
    const EmbeddedPoints p = embed(series, 2);
    CHECK(p.n == 3);
    CHECK(p.m == 2);
    CHECK(p.row(1)[0] == 3);
    CHECK(p.row(1)[1] == 4);
    CHECK(p.data.size() == 6);  // the trailing element is dropped

    CHECK_THROWS_AS((void)embed(series, 4), TooShort);
    CHECK_THROWS_AS((void)embed(series, 0), BadParams);
}

TEST_CASE("correlation integral, naive counts") {
    EmbeddedPoints pts;
    pts.n = 3;
    pts.m = 1;
    pts.data = {0.0, 0.5, 2.0};
    EmbeddingConfig cfg;
    cfg.m = 1;
    cfg.r_grid = {0.6, 1.6, 2.5};
    const CorrelationCurve c = correlation_integral(pts, cfg, PairAlgorithm::Naive);
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[0].pairs == 1);
    CHECK(c.points[1].pairs == 2);
    CHECK(c.points[2].pairs == 3);
    CHECK(c.points[1].c == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(c.n_points == 3);

    cfg.r_grid = {0.5};  // strict: the pair at exactly 0.5 is excluded
    CHECK(correlation_integral(pts, cfg, PairAlgorithm::Naive).points[0].pairs == 0);

    cfg.r_grid = {0.6, 0.6};
    CHECK_THROWS_AS((void)correlation_integral(pts, cfg, PairAlgorithm::Naive),
                    BadParams);
    cfg.r_grid = {-1.0};
    CHECK_THROWS_AS((void)correlation_integral(pts, cfg, PairAlgorithm::Naive),
                    BadParams);
    cfg.r_grid = {0.6};
    cfg.m = 2;
    CHECK_THROWS_AS((void)correlation_integral(pts, cfg, PairAlgorithm::Boxed),
                    BadParams);

    EmbeddedPoints one;
    one.n = 1;
    one.m = 1;
    one.data = {0.0};
    cfg.m = 1;
    CHECK_THROWS_AS((void)correlation_integral(one, cfg, PairAlgorithm::Naive),
                    TooFewPoints);
}

TEST_CASE("boxed counting equals naive") {
    SUBCASE("uniform cloud") {
        Lcg64 rng(2718);
        for (std::size_t m : {1, 2, 3}) {
            EmbeddedPoints pts;
            pts.n = 500;
            pts.m = m;
            pts.data.resize(pts.n * m);
            for (double& v : pts.data) v = rng.next_unit();
            EmbeddingConfig cfg;
            cfg.m = m;
            for (int j = 0; j < 12; ++j)
                cfg.r_grid.push_back(0.005 * std::pow(300.0, j / 11.0));
            const CorrelationCurve naive =
                correlation_integral(pts, cfg, PairAlgorithm::Naive);
            const CorrelationCurve boxed =
                correlation_integral(pts, cfg, PairAlgorithm::Boxed);
            REQUIRE(naive.points.size() == boxed.points.size());
            for (std::size_t j = 0; j < naive.points.size(); ++j)
                CHECK(naive.points[j].pairs == boxed.points[j].pairs);
        }
    }
    SUBCASE("lattice points probing the strict boundary") {
        EmbeddedPoints pts;
        pts.m = 2;
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y) {
                pts.data.push_back(0.25 * x);
                pts.data.push_back(0.25 * y);
            }
        pts.n = 64;
        EmbeddingConfig cfg;
        cfg.m = 2;
        cfg.r_grid = {0.25, 0.5, 0.75, 1.0, 2.0};  // radii on lattice distances
        const CorrelationCurve naive =
            correlation_integral(pts, cfg, PairAlgorithm::Naive);
        const CorrelationCurve boxed =
            correlation_integral(pts, cfg, PairAlgorithm::Boxed);
        for (std::size_t j = 0; j < naive.points.size(); ++j)
            CHECK(naive.points[j].pairs == boxed.points[j].pairs);
        CHECK(naive.points[0].pairs == 0);  // nothing strictly inside 0.25
    }
}

TEST_CASE("default radius grid") {
    EmbeddedPoints pts;
    pts.n = 3;
    pts.m = 1;
    pts.data = {0.0, 0.5, 2.0};
    const std::vector<double> grid = default_r_grid(pts, 40);
    REQUIRE(grid.size() == 40);
    CHECK(grid.front() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(grid.back() == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t j = 1; j < grid.size(); ++j) CHECK(grid[j] > grid[j - 1]);

    EmbeddedPoints same;
    same.n = 3;
    same.m = 1;
    same.data = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS((void)default_r_grid(same, 10), DegenerateCurve);
}

TEST_CASE("dimension estimate") {
    SUBCASE("exact power law") {
        CorrelationCurve curve;
        curve.n_points = 1000;
        for (int j = 0; j < 20; ++j) {
            const double r = 0.01 * std::pow(1.3, j);
            const double c = std::min(0.999, r * r);
            curve.points.push_back({r, c, 0});
        }
        const DimensionEstimate est = estimate_dimension(curve, 5);
        CHECK(est.nu == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(est.r_lo >= 0.01);
        CHECK(est.last >= est.first + 4);
    }
    SUBCASE("saturated curve has dimension zero") {
        CorrelationCurve curve;
        curve.points = {{0.1, 1.0, 10}, {0.2, 1.0, 10}, {0.4, 1.0, 10}};
        const DimensionEstimate est = estimate_dimension(curve, 5);
        CHECK(est.nu == 0.0);
    }
    SUBCASE("degenerate curves throw") {
        CorrelationCurve curve;
        curve.points = {{0.1, 0.0, 0}, {0.2, 0.0, 0}, {0.4, 1.0, 10}};
        CHECK_THROWS_AS((void)estimate_dimension(curve, 5), DegenerateCurve);
        CHECK_THROWS_AS((void)estimate_dimension(curve, 1), BadParams);
    }
    SUBCASE("uniform square estimates two") {
        Lcg64 rng(31415);
        EmbeddedPoints pts;
        pts.n = 2000;
        pts.m = 2;
        pts.data.resize(pts.n * 2);
        for (double& v : pts.data) v = rng.next_unit();
        EmbeddingConfig cfg;
        cfg.m = 2;
        for (int j = 0; j < 20; ++j)
            cfg.r_grid.push_back(0.01 * std::pow(100.0, j / 19.0));
        const CorrelationCurve curve =
            correlation_integral(pts, cfg, PairAlgorithm::Boxed);
        const DimensionEstimate est = estimate_dimension(curve, 5);
        CHECK(est.nu > 1.8);
        CHECK(est.nu < 2.2);
    }
}

TEST_CASE("ln-ln text") {
    CorrelationCurve curve;
    curve.points = {{0.5, 0.0, 0}, {1.0, 0.25, 3}};
    const std::string text = curve_lnln_text(curve);
    CHECK(text.rfind("ln_r,ln_C\n", 0) == 0);
    CHECK(text.find("0,") != std::string::npos);  // ln 1 = 0
    // the C == 0 row is dropped
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
