#include "tempest/wild_bootstrap.hpp"

#include "tempest/rng.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tempest {

void BootstrapConfig::validate() const {
    if (!(block_length >= 1.0)) {
        throw std::invalid_argument("bootstrap block length must be >= 1");
    }
    if (num_replicates < 1) {
        throw std::invalid_argument("bootstrap replicate count must be >= 1");
    }
}

double wild_ar_coefficient(double block_length) {
    if (!(block_length > 0.0)) {
        throw std::invalid_argument("bootstrap block length must be positive");
    }
    return std::exp(-1.0 / block_length);
}

BootstrapSeries generate_w(Index n, const BootstrapConfig& config,
                           std::uint64_t replicate_index,
                           std::uint64_t purpose_tag) {
    if (n < 1) throw std::invalid_argument("auxiliary series needs n >= 1");
    const double a = wild_ar_coefficient(config.block_length);
    const double b = std::sqrt(1.0 - a * a);

    auto gen = rng::stream(config.seed, purpose_tag, replicate_index);
    std::normal_distribution<double> normal(0.0, 1.0);

    BootstrapSeries out;
    out.w.resize(n);
    out.w[0] = normal(gen);
    for (Index t = 1; t < n; ++t) {
        out.w[t] = a * out.w[t - 1] + b * normal(gen);
    }
    return out;
}

Matrix generate_w_batch(Index n, const BootstrapConfig& config,
                        std::uint64_t purpose_tag) {
    config.validate();
    Matrix batch(n, config.num_replicates);
    for (int r = 0; r < config.num_replicates; ++r) {
        batch.col(r) =
            generate_w(n, config, static_cast<std::uint64_t>(r), purpose_tag).w;
    }
    return batch;
}

BootstrapSeries center_w(const BootstrapSeries& w) {
    BootstrapSeries out;
    out.w = w.w.array() - w.w.mean();
    out.centered = true;
    return out;
}

}  // namespace tempest
