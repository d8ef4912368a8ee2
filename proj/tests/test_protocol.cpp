#include "tempest/test_result.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace tempest;

TEST_CASE("empirical p-value") {
    const std::vector<double> null = {1.0, 2.0, 3.0, 4.0};
    // (1 + #{null >= stat}) / (B + 1), B = 4.
    CHECK(empirical_p_value(null, 5.0) == doctest::Approx(1.0 / 5.0));
    CHECK(empirical_p_value(null, 2.5) == doctest::Approx(3.0 / 5.0));
    CHECK(empirical_p_value(null, 0.0) == doctest::Approx(1.0));
    // Ties count toward the null.
    CHECK(empirical_p_value(null, 4.0) == doctest::Approx(2.0 / 5.0));
    CHECK(empirical_p_value({0.0, 0.0, 0.0}, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(empirical_p_value({}, 1.0), std::invalid_argument);
}

TEST_CASE("empirical threshold") {
    std::vector<double> null(99);
    for (int i = 0; i < 99; ++i) null[static_cast<std::size_t>(i)] = i + 1;
    // B = 99, alpha = 0.05: k = ceil(0.95 * 100) = 95 -> 95th smallest = 95.
    CHECK(empirical_threshold(null, 0.05) == doctest::Approx(95.0));
    // alpha = 0.5: k = ceil(50) = 50.
    CHECK(empirical_threshold(null, 0.5) == doctest::Approx(50.0));
    // Tiny alpha clamps to the maximum.
    CHECK(empirical_threshold(null, 1e-9) == doctest::Approx(99.0));
    // Huge alpha clamps to the minimum.
    CHECK(empirical_threshold(null, 0.9999) == doctest::Approx(1.0));
    // Order must not matter.
    std::vector<double> shuffled = null;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(empirical_threshold(shuffled, 0.05) == doctest::Approx(95.0));
    CHECK_THROWS_AS(empirical_threshold({}, 0.05), std::invalid_argument);
}

TEST_CASE("finalize is consistent") {
    TestResult r;
    r.alpha = 0.05;
    r.null_samples.resize(199);
    for (int i = 0; i < 199; ++i)
        r.null_samples[static_cast<std::size_t>(i)] = i;

    SUBCASE("statistic above threshold rejects") {
        r.statistic = 1000.0;
        finalize(r);
        CHECK(r.reject);
        CHECK(r.p_value == doctest::Approx(1.0 / 200.0));
        CHECK(r.statistic > r.threshold);
    }
    SUBCASE("statistic equal to threshold does not reject") {
        finalize(r);  // fills threshold
        r.statistic = r.threshold;
        finalize(r);
        CHECK_FALSE(r.reject);
    }
    SUBCASE("all-tied null yields p = 1 and no rejection") {
        std::fill(r.null_samples.begin(), r.null_samples.end(), 3.0);
        r.statistic = 3.0;
        finalize(r);
        CHECK(r.p_value == doctest::Approx(1.0));
        CHECK_FALSE(r.reject);
    }
    SUBCASE("reject iff strictly above order statistic") {
        r.statistic = 190.5;
        finalize(r);
        CHECK(r.reject == (r.statistic > r.threshold));
    }
}
