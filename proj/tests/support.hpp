#pragma once

#include "tempest/rng.hpp"
#include "tempest/series.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace tempest::testing {

/// Kolmogorov-Smirnov distance between a sample and Uniform(0,1).
inline double ks_uniform(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = sample[i];
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f - lo), std::abs(f - hi)});
    }
    return d;
}

/// Two-sample Kolmogorov-Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

/// Lag-r sample autocorrelation.
inline double autocorrelation(const Vector& x, Index lag) {
    const Index n = x.size();
    const double mean = x.mean();
    double num = 0.0, den = 0.0;
    for (Index t = 0; t < n; ++t) {
        den += (x[t] - mean) * (x[t] - mean);
    }
    for (Index t = 0; t + lag < n; ++t) {
        num += (x[t] - mean) * (x[t + lag] - mean);
    }
    return num / den;
}

/// Deterministic random matrix in [-1, 1].
inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    auto gen = rng::stream(seed, rng::purpose::trial);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) m(i, j) = unif(gen);
    }
    return m;
}

/// Deterministic random vector with standard normal entries.
inline Vector random_normal_vector(Index n, std::uint64_t seed) {
    auto gen = rng::stream(seed, rng::purpose::trial, 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal(gen);
    return v;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace tempest::testing
