#include "tempest/vstats.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace tempest;

namespace {

IndexCore constant_core(int arity, double c) {
    return IndexCore{arity, [c](std::span<const Index>) { return c; }};
}

// h(i, j) = z[i] * z[j]; V_n = (mean z)^2.
IndexCore product_core(const Vector& z) {
    return IndexCore{2, [&z](std::span<const Index> idx) {
                         return z[idx[0]] * z[idx[1]];
                     }};
}

}  // namespace

TEST_CASE("plain V-statistic on elementary cores") {
    SUBCASE("constant core of any arity returns the constant") {
        for (int arity : {1, 2, 3, 4}) {
            CHECK(v_naive(constant_core(arity, 2.5), 5) ==
                  doctest::Approx(2.5).epsilon(1e-14));
        }
    }
    SUBCASE("product core equals squared mean") {
        Vector z(3);
        z << 1.0, 2.0, 3.0;
        CHECK(v_naive(product_core(z), 3) ==
              doctest::Approx(4.0).epsilon(1e-14));
    }
}

TEST_CASE("raw bootstrapped statistic") {
    SUBCASE("two points, hand-computed") {
        // core == 1; weights (1, -1):
        // V = (1/4) [w1w1 + w1w2 + w2w1 + w2w2] = (1/4)(1 -1 -1 +1) ... with
        // core 1 the cross terms cancel: (1/4)(1 - 1 - 1 + 1) = 0.
        Vector w(2);
        w << 1.0, -1.0;
        CHECK(vb1_naive(constant_core(2, 1.0), 2, w) ==
              doctest::Approx(0.0).epsilon(1e-14));
        // With core h(i,j) = z_i z_j, z = (1, 2): V = (1/4)(sum w_i z_i)^2
        // = (1/4)(1*1 - 1*2)^2 = 1/4.
        Vector z(2);
        z << 1.0, 2.0;
        CHECK(vb1_naive(product_core(z), 2, w) ==
              doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("unit weights collapse to the plain statistic") {
        const Vector z = testing::random_normal_vector(7, 123);
        const Vector ones = Vector::Ones(7);
        const IndexCore core = product_core(z);
        CHECK(vb1_naive(core, 7, ones) ==
              doctest::Approx(v_naive(core, 7)).epsilon(1e-13));
    }
    SUBCASE("zero weights annihilate") {
        const Vector z = testing::random_normal_vector(6, 5);
        CHECK(vb1_naive(product_core(z), 6, Vector::Zero(6)) == 0.0);
    }
    SUBCASE("only the first two arguments carry weights") {
        // For an arity-3 core independent of the third index the statistic
        // must match the arity-2 value.
        Vector z(4);
        z << 0.3, -1.2, 2.0, 0.7;
        const IndexCore three{3, [&z](std::span<const Index> idx) {
                                  return z[idx[0]] * z[idx[1]];
                              }};
        const Vector w = testing::random_normal_vector(4, 77);
        CHECK(vb1_naive(three, 4, w) ==
              doctest::Approx(vb1_naive(product_core(z), 4, w))
                  .epsilon(1e-13));
    }
}

TEST_CASE("centered bootstrapped statistic") {
    SUBCASE("constant weights give exactly zero") {
        const Vector z = testing::random_normal_vector(6, 1);
        CHECK(vb2_naive(product_core(z), 6, Vector::Constant(6, 4.2)) ==
              doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("mean-zero weights reduce to the raw variant") {
        const Vector z = testing::random_normal_vector(6, 2);
        Vector w = testing::random_normal_vector(6, 3);
        w.array() -= w.mean();
        CHECK(vb2_naive(product_core(z), 6, w) ==
              doctest::Approx(vb1_naive(product_core(z), 6, w))
                  .epsilon(1e-12));
    }
    SUBCASE("invariant under constant weight shifts") {
        const Vector z = testing::random_normal_vector(6, 4);
        const Vector w = testing::random_normal_vector(6, 5);
        const Vector shifted = w.array() + 17.0;
        CHECK(vb2_naive(product_core(z), 6, w) ==
              doctest::Approx(vb2_naive(product_core(z), 6, shifted))
                  .epsilon(1e-11));
    }
}

TEST_CASE("budget guard") {
    // arity 4 at n = 64 needs 64^4 = 2^24 > 2^20 tuples.
    CHECK_THROWS_AS(v_naive(constant_core(4, 1.0), 64), std::invalid_argument);
    CHECK_THROWS_AS(
        vb1_naive(constant_core(4, 1.0), 64, Vector::Ones(64)),
        std::invalid_argument);
}

TEST_CASE("symmetry probe") {
    const Vector z = testing::random_normal_vector(8, 6);
    CHECK(core_symmetry_defect(product_core(z), 8, 200, 99) ==
          doctest::Approx(0.0).epsilon(1e-14));
    const IndexCore asym{2, [&z](std::span<const Index> idx) {
                             return z[idx[0]] - z[idx[1]];
                         }};
    CHECK(core_symmetry_defect(asym, 8, 200, 99) > 0.1);
}
