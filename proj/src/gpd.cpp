#include "tempest/gpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tempest {

namespace {

constexpr double kXiLo = -0.5;
constexpr double kXiHi = 1.0;

/// Negative log-likelihood of GPD(xi, beta) on positive exceedances.
double gpd_nll(const std::vector<double>& y, double xi, double beta) {
    const auto n = static_cast<double>(y.size());
    if (!(beta > 0.0)) return std::numeric_limits<double>::infinity();
    double nll = n * std::log(beta);
    if (std::abs(xi) < 1e-10) {
        for (double v : y) nll += v / beta;
        return nll;
    }
    for (double v : y) {
        const double t = 1.0 + xi * v / beta;
        if (t <= 0.0) return std::numeric_limits<double>::infinity();
        nll += (1.0 / xi + 1.0) * std::log(t);
    }
    return nll;
}

/// Golden-section minimizer over [lo, hi]; fn must be unimodal-ish. Returns
/// the argmin found after `iters` contractions.
template <typename Fn>
double golden_min(Fn&& fn, double lo, double hi, int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

GpdFit moments_fit(const std::vector<double>& y) {
    const auto n = static_cast<double>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= n;
    GpdFit fit;
    fit.via_mle = false;
    if (var <= 0.0) {  // all exceedances equal; treat as exponential-ish
        fit.xi = 0.0;
        fit.beta = std::max(mean, 1e-300);
        return fit;
    }
    fit.xi = 0.5 * (1.0 - mean * mean / var);
    fit.beta = mean * (1.0 - fit.xi);
    if (!(fit.beta > 0.0)) {
        fit.xi = 0.0;
        fit.beta = mean;
    }
    return fit;
}

}  // namespace

GpdFit fit_gpd_exceedances(const std::vector<double>& exceedances) {
    if (exceedances.empty()) {
        throw std::invalid_argument("GPD fit needs at least one exceedance");
    }
    double ymax = 0.0;
    for (double v : exceedances) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("GPD exceedances must be positive");
        }
        ymax = std::max(ymax, v);
    }

    // Profile likelihood: for each xi, minimize over beta on a log grid
    // around the moment estimate, then golden-section over xi.
    const GpdFit mom = moments_fit(exceedances);
    const double beta0 = std::max(mom.beta, 1e-12);
    auto profile = [&](double xi) {
        // beta must exceed -xi * ymax for the density to cover the sample.
        double lo = std::log(beta0) - 6.0;
        if (xi < 0.0) lo = std::max(lo, std::log(-xi * ymax) + 1e-9);
        const double hi = std::log(beta0) + 6.0;
        if (!(lo < hi)) return std::numeric_limits<double>::infinity();
        const double lb = golden_min(
            [&](double logb) { return gpd_nll(exceedances, xi, std::exp(logb)); },
            lo, hi, 60);
        return gpd_nll(exceedances, xi, std::exp(lb));
    };

    const double xi_hat = golden_min(profile, kXiLo, kXiHi, 60);
    double lo = std::log(beta0) - 6.0;
    if (xi_hat < 0.0) lo = std::max(lo, std::log(-xi_hat * ymax) + 1e-9);
    const double hi = std::log(beta0) + 6.0;
    GpdFit fit;
    fit.num_exceedances = static_cast<long>(exceedances.size());
    if (lo < hi) {
        const double logb = golden_min(
            [&](double b) { return gpd_nll(exceedances, xi_hat, std::exp(b)); },
            lo, hi, 60);
        fit.xi = xi_hat;
        fit.beta = std::exp(logb);
        fit.via_mle = true;
        if (std::isfinite(gpd_nll(exceedances, fit.xi, fit.beta))) return fit;
    }
    GpdFit fb = moments_fit(exceedances);
    fb.num_exceedances = fit.num_exceedances;
    return fb;
}

TailQuantile gpd_tail_quantile(const std::vector<double>& samples, double q,
                               double tail_fraction) {
    if (samples.size() < 50) {
        throw std::invalid_argument(
            "tail quantile needs at least 50 samples");
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("quantile level must lie in (0, 1)");
    }
    if (!(tail_fraction > 0.0 && tail_fraction < 0.5)) {
        throw std::invalid_argument("tail fraction must lie in (0, 0.5)");
    }

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<long>(sorted.size());
    auto empirical = [&](double level) {
        auto k = static_cast<long>(std::ceil(level * static_cast<double>(n)));
        k = std::clamp(k, 1L, n);
        return sorted[static_cast<std::size_t>(k - 1)];
    };

    TailQuantile out;
    if (q <= 1.0 - tail_fraction) {  // bulk quantile: no tail model needed
        out.value = empirical(q);
        out.source = QuantileSource::Empirical;
        return out;
    }

    const double u = empirical(1.0 - tail_fraction);
    std::vector<double> exceed;
    exceed.reserve(static_cast<std::size_t>(
        std::ceil(tail_fraction * static_cast<double>(n))) + 1);
    for (double v : sorted) {
        if (v > u) exceed.push_back(v - u);
    }
    if (exceed.size() < 5) {  // ties swallowed the tail; fall back
        out.value = empirical(q);
        out.source = QuantileSource::Empirical;
        return out;
    }

    GpdFit fit = fit_gpd_exceedances(exceed);
    fit.u = u;
    const double ratio = (1.0 - q) / tail_fraction;  // P(exceed beyond quantile)
    double value;
    if (std::abs(fit.xi) < 1e-10) {
        value = u + fit.beta * std::log(1.0 / ratio);
    } else {
        value = u + fit.beta / fit.xi * (std::pow(ratio, -fit.xi) - 1.0);
    }
    if (!std::isfinite(value) || value < u) {  // degenerate fit; fall back
        out.value = empirical(q);
        out.source = QuantileSource::Empirical;
        return out;
    }
    out.value = value;
    out.source = QuantileSource::GpdTail;
    out.fit = fit;
    return out;
}

}  // namespace tempest
