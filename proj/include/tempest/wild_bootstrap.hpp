#pragma once

#include "tempest/series.hpp"

#include <cstdint>

namespace tempest {

/// Which bootstrapped V-statistic the replicates feed.
/// Vb1 weights with the raw auxiliary series W, Vb2 with the empirically
/// centered version W-tilde. Vb1 tracks the null distribution more closely;
/// Vb2 gives more power under the alternative.
enum class BootstrapVariant { Vb1, Vb2 };

struct BootstrapConfig {
    double block_length = 20.0;  // l_n: decorrelation length of W
    int num_replicates = 300;    // B
    BootstrapVariant variant = BootstrapVariant::Vb2;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One realization of the auxiliary process, length n.
struct BootstrapSeries {
    Vector w;
    bool centered = false;
};

/// AR coefficient of the auxiliary recursion for a given block length.
double wild_ar_coefficient(double block_length);

/// Draws replicate `replicate_index` of the auxiliary process:
///   W_0 ~ N(0,1),  W_t = e^{-1/l} W_{t-1} + sqrt(1 - e^{-2/l}) eps_t.
/// The start is drawn from the stationary law, so the series is stationary
/// row-wise. Deterministic given (config.seed, purpose, replicate_index).
BootstrapSeries generate_w(Index n, const BootstrapConfig& config,
                           std::uint64_t replicate_index,
                           std::uint64_t purpose_tag);

/// All B replicates as columns of an n x B matrix; column b equals
/// generate_w(n, config, b, purpose_tag).w exactly.
Matrix generate_w_batch(Index n, const BootstrapConfig& config,
                        std::uint64_t purpose_tag);

/// Mean-subtracted copy: W~_t = W_t - mean(W). The sum of the result is zero.
BootstrapSeries center_w(const BootstrapSeries& w);

}  // namespace tempest
