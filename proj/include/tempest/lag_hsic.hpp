#pragma once

#include "tempest/gpd.hpp"
#include "tempest/kernels.hpp"
#include "tempest/series.hpp"
#include "tempest/wild_bootstrap.hpp"

#include <optional>
#include <vector>

namespace tempest {

struct LagHsicConfig {
    /// Lag radius M; scan covers m in [-M, M]. Unset = max(10, ceil(ln n)).
    std::optional<int> lag_radius;
    double alpha = 0.05;
    BootstrapConfig bootstrap;  // variant default Vb2
    bool gpd_enabled = true;
    double gpd_tail_fraction = 0.1;
    bool factor6 = true;

    int resolve_lag_radius(Index n) const;
    void validate(Index n) const;  // needs 2M + 1 < n/2 and q in (0,1)
};

struct LagScanResult {
    std::vector<int> lags;           // -M .. M
    std::vector<double> statistics;  // S_m = n_m * hsic on the shifted pairs
    double threshold = 0.0;
    double q = 0.0;  // Bonferroni-corrected level 1 - alpha/(2M+1)
    int argmax_lag = 0;
    double max_statistic = 0.0;
    bool reject = false;
    QuantileSource threshold_source = QuantileSource::Empirical;
    std::vector<double> null_samples;
    std::uint64_t seed = 0;
    Index n = 0;
    std::string notes;
};

/// Pairs (X_t, Y_{t+m}) over the overlapping index range; truncating, not
/// circular, so the result has n - |m| pairs.
PairedSeries shifted_series(const PairedSeries& z, int m);

/// Scans HSIC over all lags in [-M, M]; one wild-bootstrap null sample set
/// built from the unshifted series calibrates the Bonferroni-corrected
/// threshold at level q = 1 - alpha/(2M+1), refined by a generalized Pareto
/// tail fit when enabled.
LagScanResult lag_hsic_test(const PairedSeries& z, const KernelSpec& k,
                            const KernelSpec& l, const LagHsicConfig& config);

}  // namespace tempest
