#pragma once

#include "tempest/series.hpp"

#include <cstdint>
#include <optional>

namespace tempest {

enum class KernelFamily { Gaussian, Laplacian };

/// Kernel choice plus bandwidth. An empty bandwidth means "resolve with the
/// median heuristic on the data at hand".
///
/// Convention: Gaussian k(a,b) = exp(-||a-b||^2 / (2 sigma^2)),
///             Laplacian k(a,b) = exp(-||a-b||_1 / sigma).
/// Benchmark presets quote sigma in this convention.
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    std::optional<double> bandwidth;  // > 0 when set

    static KernelSpec gaussian(double sigma) { return {KernelFamily::Gaussian, sigma}; }
    static KernelSpec laplacian(double sigma) { return {KernelFamily::Laplacian, sigma}; }
    static KernelSpec median(KernelFamily family = KernelFamily::Gaussian) {
        return {family, std::nullopt};
    }
};

/// n x n matrix of kernel evaluations, possibly double-centered (H G H).
struct GramMatrix {
    Matrix m;
    bool centered = false;

    Index n() const { return m.rows(); }
};

/// Single kernel evaluation; requires an explicit bandwidth.
double evaluate_kernel(const KernelSpec& spec, const RowVec& a, const RowVec& b);

/// Uncentered Gram matrix of a series; requires n >= 2.
GramMatrix gram(const KernelSpec& spec, const TimeSeries& z);

/// Rectangular cross-Gram between two series with matching dimension.
Matrix gram_cross(const KernelSpec& spec, const TimeSeries& a, const TimeSeries& b);

/// H G H with H = I - (1/n) 1 1^T; row and column sums of the result vanish.
GramMatrix center(const GramMatrix& g);

inline constexpr std::int64_t kDefaultMedianMaxPairs = 1'000'000;

/// Median of pairwise Euclidean distances, subsampled with a deterministic
/// stride when the series has more than max_pairs pairs. Throws when the
/// median distance is zero (all points coincide): pick an explicit bandwidth.
double median_heuristic(const TimeSeries& z,
                        std::int64_t max_pairs = kDefaultMedianMaxPairs);

/// Spec with the bandwidth made explicit, via the median heuristic if unset.
KernelSpec resolve_bandwidth(const KernelSpec& spec, const TimeSeries& z,
                             std::int64_t max_pairs = kDefaultMedianMaxPairs);

}  // namespace tempest
