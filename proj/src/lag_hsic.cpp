#include "tempest/lag_hsic.hpp"

#include "tempest/hsic.hpp"
#include "tempest/rng.hpp"
#include "tempest/test_result.hpp"

#include <cmath>
#include <stdexcept>

namespace tempest {

int LagHsicConfig::resolve_lag_radius(Index n) const {
    if (lag_radius) return *lag_radius;
    return std::max(10, static_cast<int>(
                            std::ceil(std::log(static_cast<double>(n)))));
}

void LagHsicConfig::validate(Index n) const {
    bootstrap.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    const int m = resolve_lag_radius(n);
    if (m < 0) throw std::invalid_argument("lag radius must be >= 0");
    if (2 * m + 1 >= n / 2) {
        throw std::invalid_argument("lag window 2M+1 must stay below n/2");
    }
    if (!(gpd_tail_fraction > 0.0 && gpd_tail_fraction < 0.5)) {
        throw std::invalid_argument("GPD tail fraction must lie in (0, 0.5)");
    }
}

PairedSeries shifted_series(const PairedSeries& z, int m) {
    const Index n = z.x.n();
    const Index a = std::abs(static_cast<Index>(m));
    if (a >= n) throw std::invalid_argument("lag magnitude must be below n");
    const Index len = n - a;
    if (m >= 0) {
        return PairedSeries(TimeSeries(Matrix(z.x.values().topRows(len))),
                            TimeSeries(Matrix(z.y.values().bottomRows(len))));
    }
    return PairedSeries(TimeSeries(Matrix(z.x.values().bottomRows(len))),
                        TimeSeries(Matrix(z.y.values().topRows(len))));
}

namespace {

/// n_m * hsic of the lag-m pairing, taken from blocks of the full Grams.
double lag_statistic(const Matrix& kg, const Matrix& lg, int m) {
    const Index n = kg.rows();
    const Index a = std::abs(static_cast<Index>(m));
    const Index len = n - a;
    const Index x0 = m >= 0 ? 0 : a;
    const Index y0 = m >= 0 ? a : 0;
    const GramMatrix kb{kg.block(x0, x0, len, len), false};
    const GramMatrix lb{lg.block(y0, y0, len, len), false};
    return static_cast<double>(len) * hsic_stat(kb, lb).value;
}

}  // namespace

LagScanResult lag_hsic_test(const PairedSeries& z, const KernelSpec& k,
                            const KernelSpec& l, const LagHsicConfig& config) {
    const Index n = z.x.n();
    config.validate(n);
    if (n < 6) throw std::invalid_argument("lag scan needs n >= 6");

    const int radius = config.resolve_lag_radius(n);
    const Matrix kg = gram(k, z.x).m;
    const Matrix lg = gram(l, z.y).m;

    LagScanResult result;
    result.seed = config.bootstrap.seed;
    result.n = n;
    result.q = 1.0 - config.alpha / static_cast<double>(2 * radius + 1);

    result.lags.reserve(static_cast<std::size_t>(2 * radius + 1));
    result.statistics.reserve(static_cast<std::size_t>(2 * radius + 1));
    result.max_statistic = -std::numeric_limits<double>::infinity();
    for (int m = -radius; m <= radius; ++m) {
        const double s = lag_statistic(kg, lg, m);
        result.lags.push_back(m);
        result.statistics.push_back(s);
        if (s > result.max_statistic) {
            result.max_statistic = s;
            result.argmax_lag = m;
        }
    }

    // One null set from the unshifted series serves every lag: under
    // stationarity the lag statistics share their null law.
    const double factor = config.factor6 ? 6.0 : 1.0;
    const Matrix w =
        generate_w_batch(n, config.bootstrap, rng::purpose::wild_paired);
    const Vector vb =
        hsic_vb_fast_batch(kg, lg, w, config.bootstrap.variant);
    result.null_samples.assign(vb.data(), vb.data() + vb.size());
    for (double& v : result.null_samples) v *= factor * static_cast<double>(n);

    if (config.gpd_enabled) {
        const TailQuantile tq = gpd_tail_quantile(
            result.null_samples, result.q, config.gpd_tail_fraction);
        result.threshold = tq.value;
        result.threshold_source = tq.source;
        result.notes = tq.source == QuantileSource::GpdTail
                           ? (tq.fit.via_mle ? "tail fit: mle"
                                             : "tail fit: moments fallback")
                           : "tail fit: empirical fallback";
    } else {
        result.threshold =
            empirical_threshold(result.null_samples, 1.0 - result.q);
        result.threshold_source = QuantileSource::Empirical;
        result.notes = "empirical threshold";
    }
    result.reject = result.max_statistic > result.threshold;
    return result;
}

}  // namespace tempest
