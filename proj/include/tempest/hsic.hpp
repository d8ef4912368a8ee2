#pragma once

#include "tempest/kernels.hpp"
#include "tempest/series.hpp"
#include "tempest/test_result.hpp"
#include "tempest/vstats.hpp"
#include "tempest/wild_bootstrap.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace tempest {

/// Empirical dependence measure between the two coordinates of a sample.
struct HsicStat {
    double value = 0.0;
    Index n = 0;
};

/// (1/n^2) Tr(K H L H) with H = I - J/n, computed as the mean of the
/// element-wise product of the doubly centered Grams — symmetric in (K, L)
/// by construction. Inputs must be uncentered.
HsicStat hsic_stat(const GramMatrix& k, const GramMatrix& l);

/// Degree-four symmetric core over pairs z_i = (x_i, y_i):
///   (1/4!) sum over permutations pi of
///     k(x_p1, x_p2) [ l(y_p1, y_p2) + l(y_p3, y_p4) - 2 l(y_p2, y_p3) ].
double hsic_core(const KernelSpec& k, const KernelSpec& l,
                 const std::array<RowVec, 4>& x, const std::array<RowVec, 4>& y);

/// The same core as an index function over precomputed Grams, for the naive
/// V-statistic evaluators.
IndexCore hsic_index_core(const Matrix& kgram, const Matrix& lgram);

/// Degree-two MMD core by index over the combined core matrix
/// M = Kxx + Kyy - Kxy - Kxy'.
IndexCore mmd_index_core(const Matrix& core_matrix);

/// Returns (hsic_stat value, naive degree-4 V-statistic value), which agree
/// analytically; exposed as a cross-check. Restricted to n <= 20.
std::pair<double, double> hsic_v_identity_check(const PairedSeries& z,
                                                const KernelSpec& k,
                                                const KernelSpec& l);

/// Bootstrapped degree-4 V-statistic in O(n^2): equals the naive weighted
/// enumeration of hsic_core with weights on the first two arguments (raw
/// weights under Vb1, centered under Vb2).
double hsic_vb_fast(const GramMatrix& k, const GramMatrix& l,
                    const BootstrapSeries& w, BootstrapVariant variant);

/// Column-batched version: entry b equals hsic_vb_fast on w_batch.col(b).
Vector hsic_vb_fast_batch(const Matrix& kgram, const Matrix& lgram,
                          const Matrix& w_batch, BootstrapVariant variant);

/// Wild-bootstrap test of instantaneous independence between the two
/// coordinates. Statistic n * hsic_stat; null samples factor * n * V_b with
/// factor = 6 (the degree-4 pair count) unless disabled.
TestResult instantaneous_independence_test(const PairedSeries& z,
                                           const KernelSpec& k,
                                           const KernelSpec& l,
                                           const BootstrapConfig& config,
                                           double alpha, bool factor6 = true);

/// Gram-level entry point (reuse precomputed Grams across methods).
TestResult instantaneous_independence_test_from_grams(
    const GramMatrix& kg, const GramMatrix& lg, const BootstrapConfig& config,
    double alpha, bool factor6 = true);

/// Baseline that simulates the null by circularly rotating Y relative to X
/// by uniformly drawn offsets in [min_shift, n - min_shift],
/// min_shift = max(20, n/20). Requires n >= 3 * min_shift.
TestResult shift_hsic_test(const PairedSeries& z, const KernelSpec& k,
                           const KernelSpec& l, int num_shifts, double alpha,
                           std::uint64_t seed);

/// Gram-level entry point for the shift baseline.
TestResult shift_hsic_test_from_grams(const GramMatrix& kg,
                                      const GramMatrix& lg, int num_shifts,
                                      double alpha, std::uint64_t seed);

}  // namespace tempest
