#pragma once

#include "tempest/kernels.hpp"
#include "tempest/series.hpp"
#include "tempest/test_result.hpp"
#include "tempest/wild_bootstrap.hpp"

#include <cstdint>

namespace tempest {

/// Two samples to compare, possibly of different lengths, sharing a kernel.
struct TwoSampleInput {
    TimeSeries x;
    TimeSeries y;
    KernelSpec kernel;

    void validate() const;  // equal dimension; n_x, n_y >= 2
};

/// How the wild-bootstrap null is generated.
///  TwoProcess: independent auxiliary series for X and Y, works for any
///              (n_x, n_y). The default.
///  Paired:     single auxiliary series over pairs (x_i, y_i); needs
///              n_x == n_y and honors the config's Vb1/Vb2 variant.
enum class MmdMode { TwoProcess, Paired };

/// Degree-two core on pairs z = (x, y):
///   h(z1, z2) = k(x1,x2) - k(x1,y2) - k(x2,y1) + k(y1,y2).
double mmd_core(const KernelSpec& k, const RowVec& x1, const RowVec& y1,
                const RowVec& x2, const RowVec& y2);

/// Biased (V-statistic) squared MMD:
///   (1/n_x^2) sum k(x,x') + (1/n_y^2) sum k(y,y') - (2/(n_x n_y)) sum k(x,y).
double empirical_mmd(const TwoSampleInput& input);
double empirical_mmd_from_grams(const Matrix& kxx, const Matrix& kyy,
                                const Matrix& kxy);

/// One bootstrapped squared MMD: the three quadratic/bilinear forms with the
/// auxiliary series substituted for the empirical weights. Inputs are
/// centered first when not already centered.
double mmd_wb_null_sample(const Matrix& kxx, const Matrix& kyy,
                          const Matrix& kxy, const BootstrapSeries& wx,
                          const BootstrapSeries& wy);

/// Column b of the result is mmd_wb_null_sample with wx_batch.col(b),
/// wy_batch.col(b) (centered internally). Batched as matrix products.
Vector mmd_wb_null_batch(const Matrix& kxx, const Matrix& kyy,
                         const Matrix& kxy, const Matrix& wx_batch,
                         const Matrix& wy_batch);

/// Paired-mode bootstrapped V-statistic values, one per weight column:
///   (1/n^2) w' M w   with   M = Kxx + Kyy - Kxy - Kxy'.
/// Columns are centered first under Vb2 and used raw under Vb1.
Vector mmd_paired_null_batch(const Matrix& core_matrix, const Matrix& w_batch,
                             BootstrapVariant variant);

/// Wild-bootstrap two-sample test. Statistic and null samples are scaled by
/// n_x n_y / (n_x + n_y) (two-process mode) or by the number of pairs
/// (paired mode) so both stabilize under the null.
TestResult mmd_test(const TwoSampleInput& input, const BootstrapConfig& config,
                    double alpha, MmdMode mode = MmdMode::TwoProcess);

/// Gram-level entry point (reuse precomputed Grams across methods).
TestResult mmd_test_from_grams(const Matrix& kxx, const Matrix& kyy,
                               const Matrix& kxy, const BootstrapConfig& config,
                               double alpha, MmdMode mode);

/// Baseline that relabels the pooled sample uniformly at random. Valid for
/// independent observations; included for comparison on dependent data.
TestResult mmd_permutation_test(const TwoSampleInput& input,
                                int num_permutations, double alpha,
                                std::uint64_t seed);

/// Gram-level permutation baseline over the pooled Gram, whose first n_x
/// rows belong to X.
TestResult mmd_permutation_test_from_gram(const Matrix& pooled_gram, Index nx,
                                          Index ny, int num_permutations,
                                          double alpha, std::uint64_t seed);

}  // namespace tempest
