#include "tempest/lag_hsic.hpp"

#include "tempest/hsic.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace tempest;

namespace {

TimeSeries random_series(Index n, Index dim, std::uint64_t seed) {
    return TimeSeries(testing::random_matrix(n, dim, seed));
}

}  // namespace

TEST_CASE("lag-shifted pairing") {
    Matrix xv(5, 1), yv(5, 1);
    xv << 0, 1, 2, 3, 4;
    yv << 10, 11, 12, 13, 14;
    const PairedSeries z{TimeSeries(xv), TimeSeries(yv)};

    SUBCASE("zero lag is the identity") {
        const PairedSeries s = shifted_series(z, 0);
        CHECK(s.x.values() == xv);
        CHECK(s.y.values() == yv);
    }
    SUBCASE("positive lag pairs X_t with Y_{t+m}") {
        const PairedSeries s = shifted_series(z, 2);
        REQUIRE(s.n() == 3);
        CHECK(s.x.values()(0, 0) == 0.0);
        CHECK(s.y.values()(0, 0) == 12.0);
        CHECK(s.x.values()(2, 0) == 2.0);
        CHECK(s.y.values()(2, 0) == 14.0);
    }
    SUBCASE("negative lag pairs X_t with Y_{t+m}, m < 0") {
        const PairedSeries s = shifted_series(z, -1);
        REQUIRE(s.n() == 4);
        CHECK(s.x.values()(0, 0) == 1.0);
        CHECK(s.y.values()(0, 0) == 10.0);
        CHECK(s.x.values()(3, 0) == 4.0);
        CHECK(s.y.values()(3, 0) == 13.0);
    }
    SUBCASE("lag magnitude must stay below n") {
        CHECK_THROWS_AS(shifted_series(z, 5), std::invalid_argument);
        CHECK_THROWS_AS(shifted_series(z, -5), std::invalid_argument);
    }
}

TEST_CASE("configuration") {
    LagHsicConfig cfg;
    SUBCASE("automatic radius") {
        CHECK(cfg.resolve_lag_radius(100) == 10);   // ceil(ln 100) = 5 < 10
        CHECK(cfg.resolve_lag_radius(30000) == 11); // ceil(ln 30000) = 11
        cfg.lag_radius = 4;
        CHECK(cfg.resolve_lag_radius(30000) == 4);
    }
    SUBCASE("window must fit in the series") {
        cfg.lag_radius = 10;
        CHECK_NOTHROW(cfg.validate(100));
        CHECK_THROWS_AS(cfg.validate(42), std::invalid_argument);
    }
    SUBCASE("alpha and tail fraction ranges") {
        cfg.lag_radius = 2;
        cfg.alpha = 0.0;
        CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
        cfg.alpha = 0.05;
        cfg.gpd_tail_fraction = 0.5;
        CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
    }
}

TEST_CASE("scan statistics match explicitly shifted evaluations") {
    const KernelSpec k = KernelSpec::gaussian(1.0);
    const KernelSpec l = KernelSpec::gaussian(0.8);
    const PairedSeries z{random_series(60, 1, 7), random_series(60, 1, 8)};

    LagHsicConfig cfg;
    cfg.lag_radius = 4;
    cfg.bootstrap.num_replicates = 60;
    const LagScanResult r = lag_hsic_test(z, k, l, cfg);

    REQUIRE(r.lags.size() == 9);
    CHECK(r.lags.front() == -4);
    CHECK(r.lags.back() == 4);
    CHECK(r.q == doctest::Approx(1.0 - 0.05 / 9.0).epsilon(1e-14));

    double max_seen = -1e300;
    for (std::size_t i = 0; i < r.lags.size(); ++i) {
        const PairedSeries s = shifted_series(z, r.lags[i]);
        const double expected =
            static_cast<double>(s.n()) *
            hsic_stat(gram(k, s.x), gram(l, s.y)).value;
        CHECK(r.statistics[i] == doctest::Approx(expected).epsilon(1e-11));
        max_seen = std::max(max_seen, r.statistics[i]);
    }
    CHECK(r.max_statistic == doctest::Approx(max_seen));
    CHECK(r.reject == (r.max_statistic > r.threshold));
}

TEST_CASE("radius zero with the plain threshold matches the instantaneous test") {
    const KernelSpec k = KernelSpec::gaussian(1.0);
    const KernelSpec l = KernelSpec::gaussian(1.0);
    const PairedSeries z{random_series(80, 1, 9), random_series(80, 1, 10)};

    BootstrapConfig bcfg;
    bcfg.seed = 17;
    bcfg.num_replicates = 120;

    LagHsicConfig cfg;
    cfg.lag_radius = 0;
    cfg.gpd_enabled = false;
    cfg.bootstrap = bcfg;

    const LagScanResult scan = lag_hsic_test(z, k, l, cfg);
    const TestResult inst = instantaneous_independence_test(z, k, l, bcfg, 0.05);

    CHECK(scan.max_statistic == doctest::Approx(inst.statistic).epsilon(1e-12));
    CHECK(scan.null_samples == inst.null_samples);
    CHECK(scan.threshold == doctest::Approx(inst.threshold).epsilon(1e-12));
    CHECK(scan.reject == inst.reject);
}

TEST_CASE("wider windows only raise the corrected level") {
    const KernelSpec k = KernelSpec::gaussian(1.0);
    const KernelSpec l = KernelSpec::gaussian(1.0);
    const PairedSeries z{random_series(120, 1, 11), random_series(120, 1, 12)};

    LagHsicConfig cfg;
    cfg.gpd_enabled = false;
    cfg.bootstrap.num_replicates = 200;
    double prev_q = 0.0;
    double prev_threshold = -1e300;
    for (int radius : {0, 2, 5, 10}) {
        cfg.lag_radius = radius;
        const LagScanResult r = lag_hsic_test(z, k, l, cfg);
        CHECK(r.q > prev_q);
        // Same null set, higher quantile: the threshold cannot decrease.
        CHECK(r.threshold >= prev_threshold - 1e-12);
        prev_q = r.q;
        prev_threshold = r.threshold;
    }
}

TEST_CASE("detects a pure lag dependence at the right offset") {
    const Index n = 200;
    const int true_lag = 3;
    const Matrix xv = testing::random_matrix(n, 1, 13);
    Matrix yv = testing::random_matrix(n, 1, 14);
    // Y_{t} copies X_{t - 3}: the pairing (X_t, Y_{t+3}) aligns exactly.
    yv.bottomRows(n - true_lag) = xv.topRows(n - true_lag);

    const PairedSeries z{TimeSeries(xv), TimeSeries(yv)};
    const KernelSpec k = KernelSpec::gaussian(0.5);

    LagHsicConfig cfg;
    cfg.lag_radius = 6;
    cfg.bootstrap.num_replicates = 200;
    const LagScanResult r = lag_hsic_test(z, k, k, cfg);
    CHECK(r.argmax_lag == true_lag);
    CHECK(r.reject);
    CHECK(!r.notes.empty());
}

TEST_CASE("deterministic given the seed") {
    const KernelSpec k = KernelSpec::gaussian(1.0);
    const PairedSeries z{random_series(70, 1, 15), random_series(70, 1, 16)};
    LagHsicConfig cfg;
    cfg.lag_radius = 3;
    cfg.bootstrap.num_replicates = 80;
    cfg.bootstrap.seed = 5;
    const LagScanResult a = lag_hsic_test(z, k, k, cfg);
    const LagScanResult b = lag_hsic_test(z, k, k, cfg);
    CHECK(a.statistics == b.statistics);
    CHECK(a.null_samples == b.null_samples);
    CHECK(a.threshold == b.threshold);
    cfg.bootstrap.seed = 6;
    const LagScanResult c = lag_hsic_test(z, k, k, cfg);
    CHECK(a.null_samples != c.null_samples);
}
