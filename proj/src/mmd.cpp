#include "tempest/mmd.hpp"

#include "tempest/rng.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace tempest {

namespace {

Vector centered_columns_statistic(const Matrix& kxx, const Matrix& kyy,
                                  const Matrix& kxy, const Matrix& wx,
                                  const Matrix& wy) {
    const double nx = static_cast<double>(kxx.rows());
    const double ny = static_cast<double>(kyy.rows());
    Matrix wxc = wx.rowwise() - wx.colwise().mean();
    Matrix wyc = wy.rowwise() - wy.colwise().mean();
    const Vector xx =
        (wxc.array() * (kxx * wxc).array()).colwise().sum().transpose();
    const Vector yy =
        (wyc.array() * (kyy * wyc).array()).colwise().sum().transpose();
    const Vector xy =
        (wxc.array() * (kxy * wyc).array()).colwise().sum().transpose();
    return xx / (nx * nx) + yy / (ny * ny) - 2.0 / (nx * ny) * xy;
}

}  // namespace

void TwoSampleInput::validate() const {
    if (x.dim() != y.dim()) {
        throw std::invalid_argument("two-sample input needs equal dimensions");
    }
    if (x.n() < 2 || y.n() < 2) {
        throw std::invalid_argument("two-sample input needs n >= 2 per sample");
    }
}

double mmd_core(const KernelSpec& k, const RowVec& x1, const RowVec& y1,
                const RowVec& x2, const RowVec& y2) {
    return evaluate_kernel(k, x1, x2) - evaluate_kernel(k, x1, y2) -
           evaluate_kernel(k, x2, y1) + evaluate_kernel(k, y1, y2);
}

double empirical_mmd_from_grams(const Matrix& kxx, const Matrix& kyy,
                                const Matrix& kxy) {
    if (kxy.rows() != kxx.rows() || kxy.cols() != kyy.rows()) {
        throw std::invalid_argument("Gram matrix shapes are inconsistent");
    }
    const double nx = static_cast<double>(kxx.rows());
    const double ny = static_cast<double>(kyy.rows());
    return kxx.sum() / (nx * nx) + kyy.sum() / (ny * ny) -
           2.0 / (nx * ny) * kxy.sum();
}

double empirical_mmd(const TwoSampleInput& input) {
    input.validate();
    const Matrix kxx = gram(input.kernel, input.x).m;
    const Matrix kyy = gram(input.kernel, input.y).m;
    const Matrix kxy = gram_cross(input.kernel, input.x, input.y);
    return empirical_mmd_from_grams(kxx, kyy, kxy);
}

double mmd_wb_null_sample(const Matrix& kxx, const Matrix& kyy,
                          const Matrix& kxy, const BootstrapSeries& wx,
                          const BootstrapSeries& wy) {
    if (wx.w.size() != kxx.rows() || wy.w.size() != kyy.rows()) {
        throw std::invalid_argument("auxiliary series lengths must match Grams");
    }
    const Vector wxc = wx.centered ? wx.w : Vector(wx.w.array() - wx.w.mean());
    const Vector wyc = wy.centered ? wy.w : Vector(wy.w.array() - wy.w.mean());
    const double nx = static_cast<double>(kxx.rows());
    const double ny = static_cast<double>(kyy.rows());
    return wxc.dot(kxx * wxc) / (nx * nx) + wyc.dot(kyy * wyc) / (ny * ny) -
           2.0 / (nx * ny) * wxc.dot(kxy * wyc);
}

Vector mmd_wb_null_batch(const Matrix& kxx, const Matrix& kyy,
                         const Matrix& kxy, const Matrix& wx_batch,
                         const Matrix& wy_batch) {
    if (wx_batch.rows() != kxx.rows() || wy_batch.rows() != kyy.rows() ||
        wx_batch.cols() != wy_batch.cols()) {
        throw std::invalid_argument("batch shapes are inconsistent");
    }
    return centered_columns_statistic(kxx, kyy, kxy, wx_batch, wy_batch);
}

Vector mmd_paired_null_batch(const Matrix& core_matrix, const Matrix& w_batch,
                             BootstrapVariant variant) {
    if (w_batch.rows() != core_matrix.rows()) {
        throw std::invalid_argument("weight length must match core matrix");
    }
    const double n = static_cast<double>(core_matrix.rows());
    Matrix w = w_batch;
    if (variant == BootstrapVariant::Vb2) {
        w = w.rowwise() - w.colwise().mean();
    }
    return (w.array() * (core_matrix * w).array()).colwise().sum().transpose() /
           (n * n);
}

TestResult mmd_test_from_grams(const Matrix& kxx, const Matrix& kyy,
                               const Matrix& kxy, const BootstrapConfig& config,
                               double alpha, MmdMode mode) {
    config.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    const Index nx = kxx.rows();
    const Index ny = kyy.rows();

    TestResult result;
    result.alpha = alpha;
    result.seed = config.seed;
    result.n = nx + ny;
    result.replicates = config.num_replicates;
    result.block_length = config.block_length;

    if (mode == MmdMode::TwoProcess) {
        // Scale rho_x rho_y n = n_x n_y / (n_x + n_y) stabilizes the null.
        const double scale = static_cast<double>(nx) * static_cast<double>(ny) /
                             static_cast<double>(nx + ny);
        result.method = "mmd-wild";
        result.statistic = scale * empirical_mmd_from_grams(kxx, kyy, kxy);
        result.factor_applied = scale;
        const Matrix wx = generate_w_batch(nx, config, rng::purpose::wild_x);
        const Matrix wy = generate_w_batch(ny, config, rng::purpose::wild_y);
        const Vector null_raw = mmd_wb_null_batch(kxx, kyy, kxy, wx, wy);
        result.null_samples.assign(null_raw.data(),
                                   null_raw.data() + null_raw.size());
        for (double& v : result.null_samples) v *= scale;
    } else {
        if (nx != ny) {
            throw std::invalid_argument("paired mode needs n_x == n_y");
        }
        const double n = static_cast<double>(nx);
        result.method = config.variant == BootstrapVariant::Vb1
                            ? "mmd-paired-vb1"
                            : "mmd-paired-vb2";
        result.n = nx;
        result.statistic = n * empirical_mmd_from_grams(kxx, kyy, kxy);
        result.factor_applied = n;  // degree-2 core: the pair factor is 1
        const Matrix core_matrix = kxx + kyy - kxy - kxy.transpose();
        const Matrix w = generate_w_batch(nx, config, rng::purpose::wild_paired);
        const Vector null_raw =
            mmd_paired_null_batch(core_matrix, w, config.variant);
        result.null_samples.assign(null_raw.data(),
                                   null_raw.data() + null_raw.size());
        for (double& v : result.null_samples) v *= n;
    }
    finalize(result);
    return result;
}

TestResult mmd_test(const TwoSampleInput& input, const BootstrapConfig& config,
                    double alpha, MmdMode mode) {
    input.validate();
    const Matrix kxx = gram(input.kernel, input.x).m;
    const Matrix kyy = gram(input.kernel, input.y).m;
    const Matrix kxy = gram_cross(input.kernel, input.x, input.y);
    return mmd_test_from_grams(kxx, kyy, kxy, config, alpha, mode);
}

TestResult mmd_permutation_test_from_gram(const Matrix& pooled_gram, Index nx,
                                          Index ny, int num_permutations,
                                          double alpha, std::uint64_t seed) {
    if (pooled_gram.rows() != nx + ny || pooled_gram.cols() != nx + ny) {
        throw std::invalid_argument("pooled Gram must be (n_x+n_y) square");
    }
    if (num_permutations < 1) {
        throw std::invalid_argument("need at least one permutation");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    const Index n = nx + ny;

    // With labels v_i = 1/n_x on X and -1/n_y on Y, v' G v is exactly the
    // biased squared MMD of the relabeled samples.
    const double scale = static_cast<double>(nx) * static_cast<double>(ny) /
                         static_cast<double>(n);
    Vector labels(n);
    labels.head(nx).setConstant(1.0 / static_cast<double>(nx));
    labels.tail(ny).setConstant(-1.0 / static_cast<double>(ny));

    TestResult result;
    result.method = "mmd-permutation";
    result.alpha = alpha;
    result.seed = seed;
    result.n = n;
    result.replicates = num_permutations;
    result.factor_applied = scale;
    result.statistic = scale * labels.dot(pooled_gram * labels);

    auto gen = rng::stream(seed, rng::purpose::permutation);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    Matrix v(n, num_permutations);
    for (int b = 0; b < num_permutations; ++b) {
        std::shuffle(order.begin(), order.end(), gen);
        for (Index i = 0; i < n; ++i) {
            v(order[static_cast<std::size_t>(i)], b) =
                i < nx ? 1.0 / static_cast<double>(nx)
                       : -1.0 / static_cast<double>(ny);
        }
    }
    const Vector null_raw =
        (v.array() * (pooled_gram * v).array()).colwise().sum().transpose();
    result.null_samples.assign(null_raw.data(),
                               null_raw.data() + null_raw.size());
    for (double& s : result.null_samples) s *= scale;
    finalize(result);
    return result;
}

TestResult mmd_permutation_test(const TwoSampleInput& input,
                                int num_permutations, double alpha,
                                std::uint64_t seed) {
    input.validate();
    const Index nx = input.x.n();
    const Index ny = input.y.n();
    Matrix pooled(nx + ny, input.x.dim());
    pooled.topRows(nx) = input.x.values();
    pooled.bottomRows(ny) = input.y.values();
    const Matrix g = gram(input.kernel, TimeSeries(pooled)).m;
    return mmd_permutation_test_from_gram(g, nx, ny, num_permutations, alpha,
                                          seed);
}

}  // namespace tempest
