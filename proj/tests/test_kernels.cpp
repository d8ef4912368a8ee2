#include "tempest/kernels.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace tempest;

namespace {

TimeSeries points1d(std::initializer_list<double> values) {
    Matrix m(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (double v : values) m(i++, 0) = v;
    return TimeSeries(std::move(m));
}

}  // namespace

TEST_CASE("evaluate_kernel closed forms") {
    RowVec a0(1), b1(1);
    a0 << 0.0;
    b1 << 1.0;
    CHECK(evaluate_kernel(KernelSpec::gaussian(1.0), a0, a0) == 1.0);
    CHECK(evaluate_kernel(KernelSpec::gaussian(1.0), a0, b1) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    RowVec c(2), d(2);
    c << 0.0, 0.0;
    d << 1.0, 1.0;
    CHECK(evaluate_kernel(KernelSpec::laplacian(2.0), c, d) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("evaluate_kernel validates inputs") {
    RowVec a(1), b(2);
    a << 0.0;
    b << 0.0, 1.0;
    CHECK_THROWS_AS(evaluate_kernel(KernelSpec::gaussian(1.0), a, b),
                    std::invalid_argument);
    KernelSpec unset = KernelSpec::median();
    RowVec c(1);
    c << 1.0;
    CHECK_THROWS_AS(evaluate_kernel(unset, a, c), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_kernel(KernelSpec::gaussian(-1.0), a, c),
                    std::invalid_argument);
}

TEST_CASE("gram matrices") {
    SUBCASE("two identical points give the all-ones matrix") {
        const GramMatrix g =
            gram(KernelSpec::gaussian(1.0), points1d({3.0, 3.0}));
        CHECK(g.m.isApprox(Matrix::Ones(2, 2)));
        CHECK_FALSE(g.centered);
    }
    SUBCASE("points 0,1 at sigma 1") {
        const GramMatrix g =
            gram(KernelSpec::gaussian(1.0), points1d({0.0, 1.0}));
        CHECK(g.m(0, 0) == 1.0);
        CHECK(g.m(1, 1) == 1.0);
        CHECK(g.m(0, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
        CHECK(g.m(0, 1) == g.m(1, 0));
    }
    SUBCASE("random Gram is exactly symmetric and PSD within tolerance") {
        const TimeSeries z(testing::random_matrix(24, 3, 7));
        const GramMatrix g = gram(KernelSpec::gaussian(0.7), z);
        CHECK(g.m == g.m.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> es(g.m);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        const GramMatrix gl = gram(KernelSpec::laplacian(0.9), z);
        Eigen::SelfAdjointEigenSolver<Matrix> esl(gl.m);
        CHECK(esl.eigenvalues().minCoeff() >= -1e-10);
    }
    SUBCASE("cross-Gram matches elementwise evaluation") {
        const TimeSeries a(testing::random_matrix(5, 2, 11));
        const TimeSeries b(testing::random_matrix(7, 2, 13));
        const KernelSpec spec = KernelSpec::gaussian(0.8);
        const Matrix cross = gram_cross(spec, a, b);
        REQUIRE(cross.rows() == 5);
        REQUIRE(cross.cols() == 7);
        for (Index i = 0; i < 5; ++i) {
            for (Index j = 0; j < 7; ++j) {
                CHECK(cross(i, j) ==
                      doctest::Approx(evaluate_kernel(spec, a.row(i), b.row(j)))
                          .epsilon(1e-12));
            }
        }
    }
    SUBCASE("single observation is rejected") {
        CHECK_THROWS_AS(gram(KernelSpec::gaussian(1.0), points1d({1.0})),
                        std::invalid_argument);
    }
}

TEST_CASE("centering") {
    SUBCASE("all-ones goes to zero") {
        const GramMatrix g{Matrix::Ones(4, 4), false};
        CHECK(center(g).m.isZero(1e-14));
    }
    SUBCASE("2x2 closed form") {
        const double a = 0.3;
        Matrix m(2, 2);
        m << 1.0, a, a, 1.0;
        const GramMatrix c = center(GramMatrix{m, false});
        Matrix expected(2, 2);
        expected << 1.0, -1.0, -1.0, 1.0;
        expected *= (1.0 - a) / 2.0;
        CHECK(c.m.isApprox(expected, 1e-12));
        CHECK(c.centered);
    }
    SUBCASE("row and column sums vanish; idempotent") {
        const TimeSeries z(testing::random_matrix(9, 2, 3));
        const GramMatrix g = gram(KernelSpec::gaussian(0.5), z);
        const GramMatrix c = center(g);
        CHECK(c.m.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9 * 9);
        CHECK(c.m.colwise().sum().cwiseAbs().maxCoeff() < 1e-9 * 9);
        // H idempotence: centering the centered entries changes nothing.
        const Matrix twice = center(GramMatrix{c.m, false}).m;
        CHECK(twice.isApprox(c.m, 1e-12));
        // The API itself refuses a flagged-centered input.
        CHECK_THROWS_AS(center(c), std::invalid_argument);
    }
}

TEST_CASE("median heuristic") {
    CHECK(median_heuristic(points1d({0.0, 1.0, 2.0})) == doctest::Approx(1.0));
    CHECK(median_heuristic(points1d({0.0, 5.0})) == doctest::Approx(5.0));
    // Even pair count: distances {1,2,3,3,5,6} -> median 3.
    CHECK(median_heuristic(points1d({0.0, 1.0, 3.0, 6.0})) ==
          doctest::Approx(3.0));
    CHECK_THROWS_AS(median_heuristic(points1d({2.0, 2.0, 2.0})),
                    std::invalid_argument);

    SUBCASE("permutation invariance with full enumeration") {
        const TimeSeries z(testing::random_matrix(20, 2, 17));
        Matrix shuffled = z.values();
        shuffled.row(0).swap(shuffled.row(19));
        shuffled.row(3).swap(shuffled.row(11));
        CHECK(median_heuristic(z) ==
              doctest::Approx(median_heuristic(TimeSeries(shuffled)))
                  .epsilon(1e-12));
    }
    SUBCASE("subsampled median is deterministic and in range") {
        const TimeSeries z(testing::random_matrix(200, 2, 19));
        const double full = median_heuristic(z);
        const double sub = median_heuristic(z, 500);
        CHECK(sub == median_heuristic(z, 500));
        CHECK(sub > 0.25 * full);
        CHECK(sub < 4.0 * full);
    }
}

TEST_CASE("resolve_bandwidth") {
    const TimeSeries z = points1d({0.0, 1.0, 2.0});
    const KernelSpec fixed = KernelSpec::gaussian(2.5);
    CHECK(resolve_bandwidth(fixed, z).bandwidth.value() == 2.5);
    const KernelSpec med = resolve_bandwidth(KernelSpec::median(), z);
    CHECK(med.bandwidth.value() == doctest::Approx(1.0));
}
