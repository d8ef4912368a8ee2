#pragma once

#include <string>
#include <vector>

namespace tempest {

/// Generalized Pareto fit to threshold exceedances.
struct GpdFit {
    double xi = 0.0;    // shape
    double beta = 1.0;  // scale
    double u = 0.0;     // threshold the exceedances were taken over
    long num_exceedances = 0;
    bool via_mle = true;  // false: method-of-moments fallback
};

/// Fits xi, beta by profile maximum likelihood to `exceedances` (values
/// already shifted to be > 0). Falls back to method-of-moments when the
/// likelihood surface is degenerate. Throws on empty input or non-positive
/// values.
GpdFit fit_gpd_exceedances(const std::vector<double>& exceedances);

/// How a tail quantile was obtained.
enum class QuantileSource { GpdTail, Empirical };

struct TailQuantile {
    double value = 0.0;
    QuantileSource source = QuantileSource::Empirical;
    GpdFit fit;  // meaningful only when source == GpdTail
};

/// Level-q quantile of `samples` using a peaks-over-threshold refinement:
/// the top `tail_fraction` of the sample is modeled as generalized Pareto
/// above the empirical (1 - tail_fraction) quantile, and the q-quantile is
/// read off the fitted tail. Falls back to the plain empirical quantile when
/// q falls in the bulk or the tail fit degenerates. Needs >= 50 samples.
TailQuantile gpd_tail_quantile(const std::vector<double>& samples, double q,
                               double tail_fraction = 0.1);

}  // namespace tempest
