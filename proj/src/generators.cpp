#include "tempest/generators.hpp"

#include "tempest/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tempest {

namespace {

constexpr int kGibbsBurnInScans = 500;
constexpr Index kArBurnIn = 100;

Eigen::LLT<Matrix> checked_llt(const Matrix& cov) {
    if (cov.rows() != cov.cols() || !cov.isApprox(cov.transpose(), 1e-12)) {
        throw std::invalid_argument("covariance must be square symmetric");
    }
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance must be positive definite");
    }
    return llt;
}

}  // namespace

TimeSeries gen_gibbs_normal(Index n, const Vector& mean, const Matrix& cov,
                            int thin, std::uint64_t seed) {
    if (n < 1 || thin < 1) {
        throw std::invalid_argument("Gibbs sampler needs n >= 1, thin >= 1");
    }
    if (mean.size() != 2 || cov.rows() != 2 || cov.cols() != 2) {
        throw std::invalid_argument("Gibbs sampler is bivariate");
    }
    checked_llt(cov);  // PD check
    const double s11 = cov(0, 0), s22 = cov(1, 1), s12 = cov(0, 1);
    const double sd1 = std::sqrt(s11 - s12 * s12 / s22);
    const double sd2 = std::sqrt(s22 - s12 * s12 / s11);

    auto gen = rng::stream(seed, rng::purpose::gen_gibbs);
    std::normal_distribution<double> normal(0.0, 1.0);
    double x1 = mean[0], x2 = mean[1];
    auto scan = [&] {
        x1 = mean[0] + s12 / s22 * (x2 - mean[1]) + sd1 * normal(gen);
        x2 = mean[1] + s12 / s11 * (x1 - mean[0]) + sd2 * normal(gen);
    };

    for (int i = 0; i < kGibbsBurnInScans; ++i) scan();
    Matrix out(n, 2);
    for (Index i = 0; i < n; ++i) {
        for (int s = 0; s < thin; ++s) scan();
        out(i, 0) = x1;
        out(i, 1) = x2;
    }
    return TimeSeries(std::move(out));
}

TimeSeries gen_iid_normal(Index n, const Vector& mean, const Matrix& cov,
                          std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (mean.size() != cov.rows()) {
        throw std::invalid_argument("mean and covariance sizes must agree");
    }
    const Matrix chol = checked_llt(cov).matrixL();
    auto gen = rng::stream(seed, rng::purpose::gen_iid);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Index d = mean.size();
    Matrix out(n, d);
    Vector z(d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) z[j] = normal(gen);
        out.row(i) = (mean + chol * z).transpose();
    }
    return TimeSeries(std::move(out));
}

TimeSeries gen_pitch_sound(Index num_periods, int d, double sigma_frac,
                           double lambda, std::uint64_t seed,
                           int neighborhood) {
    if (num_periods < 1 || d < 2) {
        throw std::invalid_argument("pitch sound needs num_periods >= 1, d >= 2");
    }
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must lie in (0, 1)");
    }
    if (!(sigma_frac > 0.0)) {
        throw std::invalid_argument("sigma fraction must be positive");
    }
    if (neighborhood < 1) {
        throw std::invalid_argument("neighborhood must be >= 1");
    }
    const double sigma = sigma_frac;  // Omega = 1
    const int jmax = neighborhood;

    // Window stencil: weight(o)(r, s) = exp(-((r-s)/d - o)^2 / (2 sigma^2)).
    std::vector<Matrix> window(static_cast<std::size_t>(2 * jmax + 1));
    for (int o = -jmax; o <= jmax; ++o) {
        Matrix wm(d, d);
        for (int r = 0; r < d; ++r) {
            for (int s = 0; s < d; ++s) {
                const double dt =
                    static_cast<double>(r - s) / static_cast<double>(d) -
                    static_cast<double>(o);
                wm(r, s) = std::exp(-dt * dt / (2.0 * sigma * sigma));
            }
        }
        window[static_cast<std::size_t>(o + jmax)] = std::move(wm);
    }

    // Latent AR(1) patterns, extended jmax periods past both ends so edge
    // observations superpose a full neighborhood. The chain is anchored at
    // period 0 and grown forward and backward from separate streams (the
    // stationary Gaussian AR(1) is time-reversible), so the patterns of the
    // shared periods do not depend on the neighborhood width.
    auto fwd = rng::stream(seed, rng::purpose::gen_pitch, 0);
    auto bwd = rng::stream(seed, rng::purpose::gen_pitch, 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Index total = num_periods + 2 * jmax;
    Matrix a(total, d);
    const double innov = std::sqrt(1.0 - lambda * lambda);
    for (Index j = 0; j < d; ++j) a(jmax, j) = normal(fwd);
    for (Index i = jmax + 1; i < total; ++i) {
        for (Index j = 0; j < d; ++j) {
            a(i, j) = lambda * a(i - 1, j) + innov * normal(fwd);
        }
    }
    for (Index i = jmax - 1; i >= 0; --i) {
        for (Index j = 0; j < d; ++j) {
            a(i, j) = lambda * a(i + 1, j) + innov * normal(bwd);
        }
    }

    Matrix out = Matrix::Zero(num_periods, d);
    for (Index i = 0; i < num_periods; ++i) {
        for (int o = -jmax; o <= jmax; ++o) {
            // Pattern of period j = i + o lives at extended row i + o + jmax.
            out.row(i) += a.row(i + o + jmax) *
                          window[static_cast<std::size_t>(o + jmax)].transpose();
        }
    }
    return TimeSeries(std::move(out));
}

PairedSeries gen_extinct_gaussian_pair(Index n, double ar,
                                       double extinction_radius,
                                       std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (!(ar >= 0.0 && ar < 1.0)) {
        throw std::invalid_argument("AR coefficient must lie in [0, 1)");
    }
    if (extinction_radius < 0.0) {
        throw std::invalid_argument("extinction radius must be >= 0");
    }
    auto gen = rng::stream(seed, rng::purpose::gen_extinct);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double r2 = extinction_radius * extinction_radius;
    auto innovation = [&](double& e, double& h) {
        do {
            e = normal(gen);
            h = normal(gen);
        } while (e * e + h * h <= r2);
    };

    double x = 0.0, y = 0.0, e = 0.0, h = 0.0;
    for (Index t = 0; t < kArBurnIn; ++t) {
        innovation(e, h);
        x = ar * x + e;
        y = ar * y + h;
    }
    Matrix xs(n, 1), ys(n, 1);
    for (Index t = 0; t < n; ++t) {
        innovation(e, h);
        x = ar * x + e;
        y = ar * y + h;
        xs(t, 0) = x;
        ys(t, 0) = y;
    }
    return PairedSeries(TimeSeries(std::move(xs)), TimeSeries(std::move(ys)));
}

PairedSeries gen_vec_pair(Index n, double coupling, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (!(coupling >= 0.0 && coupling <= 0.45)) {
        throw std::invalid_argument("coupling must lie in [0, 0.45]");
    }
    auto gen = rng::stream(seed, rng::purpose::gen_vec);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix xs(n, 1), ys(n, 1);
    double x = 0.0, y = 0.0, s2 = 1.0;
    for (Index t = 0; t < n; ++t) {
        // s2 is the shared conditional variance; stability needs
        // 2 * coupling < 1, hence the 0.45 cap.
        s2 = 1.0 + coupling * (x * x + y * y);
        const double s = std::sqrt(s2);
        x = normal(gen) * s;
        y = normal(gen) * s;
        if (std::abs(x) > 1e6 || std::abs(y) > 1e6) {
            throw std::runtime_error("volatility recursion blew up");
        }
        xs(t, 0) = x;
        ys(t, 0) = y;
    }
    return PairedSeries(TimeSeries(std::move(xs)), TimeSeries(std::move(ys)));
}

PairedSeries gen_oscillator_pair(Index n, double c, double f1, double f2,
                                 double ts, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (!(ts > 0.0)) throw std::invalid_argument("sampling period must be > 0");
    auto gen = rng::stream(seed, rng::purpose::gen_oscillator);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double step1 = 2.0 * std::numbers::pi * f1 * ts;
    const double step2 = 2.0 * std::numbers::pi * f2 * ts;
    double p1 = 0.0, p2 = 0.0;
    Matrix xs(n, 1), ys(n, 1);
    for (Index t = 0; t < n; ++t) {
        p1 += 0.1 * normal(gen) + step1;
        p2 += 0.1 * normal(gen) + step2;
        xs(t, 0) = std::cos(p1);
        ys(t, 0) = (2.0 + c * std::sin(p1)) * std::cos(p2);
    }
    return PairedSeries(TimeSeries(std::move(xs)), TimeSeries(std::move(ys)));
}

PairedSeries gen_ar1_pair(Index n, double ar, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (!(ar >= 0.0 && ar < 1.0)) {
        throw std::invalid_argument("AR coefficient must lie in [0, 1)");
    }
    auto gen = rng::stream(seed, rng::purpose::gen_ar);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix xs(n, 1), ys(n, 1);
    double x = 0.0, y = 0.0;
    for (Index t = 0; t < kArBurnIn; ++t) {
        x = ar * x + normal(gen);
        y = ar * y + normal(gen);
    }
    for (Index t = 0; t < n; ++t) {
        x = ar * x + normal(gen);
        y = ar * y + normal(gen);
        xs(t, 0) = x;
        ys(t, 0) = y;
    }
    return PairedSeries(TimeSeries(std::move(xs)), TimeSeries(std::move(ys)));
}

PairedSeries gen_white_noise_pair(Index n, std::uint64_t seed) {
    return gen_ar1_pair(n, 0.0, seed);
}

}  // namespace tempest
