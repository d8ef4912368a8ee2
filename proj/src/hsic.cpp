#include "tempest/hsic.hpp"

#include "tempest/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tempest {

namespace {

Matrix double_center(const Matrix& g) {
    const double n = static_cast<double>(g.rows());
    const RowVec col_mean = g.colwise().mean();
    const double grand = g.mean();
    Matrix c = g;
    c.rowwise() -= col_mean;
    c.colwise() -= col_mean.transpose();  // symmetric input: row means = col means
    c.array() += grand;
    (void)n;
    return c;
}

void check_same_size(const Matrix& k, const Matrix& l) {
    if (k.rows() != k.cols() || l.rows() != l.cols() || k.rows() != l.rows()) {
        throw std::invalid_argument("Gram matrices must be square, same size");
    }
}

constexpr std::array<std::array<int, 4>, 24> kPerms = {{
    {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
    {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
    {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
    {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
    {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0},
}};

}  // namespace

HsicStat hsic_stat(const GramMatrix& k, const GramMatrix& l) {
    if (k.centered || l.centered) {
        throw std::invalid_argument("hsic_stat expects uncentered Grams");
    }
    check_same_size(k.m, l.m);
    const Index n = k.m.rows();
    const Matrix kc = double_center(k.m);
    const Matrix lc = double_center(l.m);
    HsicStat out;
    out.n = n;
    out.value = (kc.array() * lc.array()).sum() /
                (static_cast<double>(n) * static_cast<double>(n));
    return out;
}

double hsic_core(const KernelSpec& k, const KernelSpec& l,
                 const std::array<RowVec, 4>& x,
                 const std::array<RowVec, 4>& y) {
    Matrix kg(4, 4), lg(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            kg(i, j) = kg(j, i) = evaluate_kernel(k, x[static_cast<std::size_t>(i)],
                                                  x[static_cast<std::size_t>(j)]);
            lg(i, j) = lg(j, i) = evaluate_kernel(l, y[static_cast<std::size_t>(i)],
                                                  y[static_cast<std::size_t>(j)]);
        }
    }
    double total = 0.0;
    for (const auto& p : kPerms) {
        total += kg(p[0], p[1]) *
                 (lg(p[0], p[1]) + lg(p[2], p[3]) - 2.0 * lg(p[1], p[2]));
    }
    return total / 24.0;
}

IndexCore hsic_index_core(const Matrix& kgram, const Matrix& lgram) {
    check_same_size(kgram, lgram);
    IndexCore core;
    core.arity = 4;
    core.eval = [kgram, lgram](std::span<const Index> idx) {
        double total = 0.0;
        for (const auto& p : kPerms) {
            const Index a = idx[static_cast<std::size_t>(p[0])];
            const Index b = idx[static_cast<std::size_t>(p[1])];
            const Index c = idx[static_cast<std::size_t>(p[2])];
            const Index d = idx[static_cast<std::size_t>(p[3])];
            total += kgram(a, b) *
                     (lgram(a, b) + lgram(c, d) - 2.0 * lgram(b, c));
        }
        return total / 24.0;
    };
    return core;
}

IndexCore mmd_index_core(const Matrix& core_matrix) {
    if (core_matrix.rows() != core_matrix.cols()) {
        throw std::invalid_argument("core matrix must be square");
    }
    IndexCore core;
    core.arity = 2;
    core.eval = [core_matrix](std::span<const Index> idx) {
        return core_matrix(idx[0], idx[1]);
    };
    return core;
}

std::pair<double, double> hsic_v_identity_check(const PairedSeries& z,
                                                const KernelSpec& k,
                                                const KernelSpec& l) {
    const Index n = z.x.n();
    if (n > 20) {
        throw std::invalid_argument("identity check restricted to n <= 20");
    }
    const GramMatrix kg = gram(k, z.x);
    const GramMatrix lg = gram(l, z.y);
    const double direct = hsic_stat(kg, lg).value;
    const double naive = v_naive(hsic_index_core(kg.m, lg.m), n);
    return {direct, naive};
}

namespace {

/// Shared implementation of the O(n^2) bootstrapped degree-4 V-statistic.
/// Derivation: symmetrizing the core spreads the two bootstrap weights over
/// all 6 unordered argument-position pairs; each of the core's three summands
/// then factorizes into quadratic/bilinear forms in K, L, w and row sums.
Vector vb_batch_impl(const Matrix& kg, const Matrix& lg, Matrix w) {
    const Index n = kg.rows();
    const double nd = static_cast<double>(n);
    const Matrix m = kg.array() * lg.array();  // K o L
    const Vector ku = kg.rowwise().sum();
    const Vector lu = lg.rowwise().sum();
    const Vector mu = m.rowwise().sum();
    const double sk = ku.sum();
    const double sl = lu.sum();
    const double skl = mu.sum();

    const Matrix kw = kg * w;  // n x B
    const Matrix lw = lg * w;
    const Matrix mw = m * w;

    using Row = Eigen::Array<double, 1, Eigen::Dynamic>;
    const Row sw = w.colwise().sum().array();
    const Row wmw = (w.array() * mw.array()).colwise().sum();    // w'(KoL)w
    const Row wmu = (mu.transpose() * w).array();                // w'(KoL)u
    const Row wkw = (w.array() * kw.array()).colwise().sum();
    const Row wlw = (w.array() * lw.array()).colwise().sum();
    const Row wku = (ku.transpose() * w).array();
    const Row wlu = (lu.transpose() * w).array();

    const Row e1 = ((w.array() * kw.array()).colwise() * lu.array()).colwise().sum();
    const Row e2 = ((w.array() * lw.array()).colwise() * ku.array()).colwise().sum();
    const Row e3 = (kw.array() * lw.array()).colwise().sum();
    const Row f1 = (kw.array().colwise() * lu.array()).colwise().sum();
    const Row f2 = (w.array().colwise() * (ku.array() * lu.array())).colwise().sum();
    const Row f3 = (lw.array().colwise() * ku.array()).colwise().sum();

    const Row total = nd * nd * wmw + 4.0 * nd * sw * wmu + sw.square() * skl +
                      wkw * sl + sk * wlw + 4.0 * wku * wlu -
                      2.0 * (nd * (e1 + e2 + e3) + sw * (f1 + f2 + f3));
    return (total / (6.0 * nd * nd * nd * nd)).matrix().transpose();
}

}  // namespace

double hsic_vb_fast(const GramMatrix& k, const GramMatrix& l,
                    const BootstrapSeries& w, BootstrapVariant variant) {
    if (k.centered || l.centered) {
        throw std::invalid_argument("hsic_vb_fast expects uncentered Grams");
    }
    check_same_size(k.m, l.m);
    if (w.w.size() != k.m.rows()) {
        throw std::invalid_argument("auxiliary series length must match Gram");
    }
    Matrix wm = w.w;
    if (variant == BootstrapVariant::Vb2 && !w.centered) {
        wm.array() -= w.w.mean();
    }
    return vb_batch_impl(k.m, l.m, std::move(wm))[0];
}

Vector hsic_vb_fast_batch(const Matrix& kgram, const Matrix& lgram,
                          const Matrix& w_batch, BootstrapVariant variant) {
    check_same_size(kgram, lgram);
    if (w_batch.rows() != kgram.rows()) {
        throw std::invalid_argument("batch length must match Gram");
    }
    Matrix w = w_batch;
    if (variant == BootstrapVariant::Vb2) {
        w = w.rowwise() - w.colwise().mean();
    }
    return vb_batch_impl(kgram, lgram, std::move(w));
}

TestResult instantaneous_independence_test(const PairedSeries& z,
                                           const KernelSpec& k,
                                           const KernelSpec& l,
                                           const BootstrapConfig& config,
                                           double alpha, bool factor6) {
    if (z.x.n() < 6) {
        throw std::invalid_argument("independence test needs n >= 6");
    }
    return instantaneous_independence_test_from_grams(
        gram(k, z.x), gram(l, z.y), config, alpha, factor6);
}

TestResult instantaneous_independence_test_from_grams(
    const GramMatrix& kg, const GramMatrix& lg, const BootstrapConfig& config,
    double alpha, bool factor6) {
    config.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    const Index n = kg.m.rows();
    if (n < 6) {
        throw std::invalid_argument("independence test needs n >= 6");
    }
    const double nd = static_cast<double>(n);

    TestResult result;
    result.method = "hsic-wild";
    result.alpha = alpha;
    result.seed = config.seed;
    result.n = n;
    result.replicates = config.num_replicates;
    result.block_length = config.block_length;
    result.statistic = nd * hsic_stat(kg, lg).value;
    const double factor = factor6 ? 6.0 : 1.0;  // pairs of 4 arguments taken 2 at a time
    result.factor_applied = factor;

    const Matrix w = generate_w_batch(n, config, rng::purpose::wild_paired);
    const Vector vb = hsic_vb_fast_batch(kg.m, lg.m, w, config.variant);
    result.null_samples.assign(vb.data(), vb.data() + vb.size());
    for (double& v : result.null_samples) v *= factor * nd;
    result.notes = config.variant == BootstrapVariant::Vb1
                       ? "raw-weight variant"
                       : "centered-weight variant";
    finalize(result);
    return result;
}

TestResult shift_hsic_test(const PairedSeries& z, const KernelSpec& k,
                           const KernelSpec& l, int num_shifts, double alpha,
                           std::uint64_t seed) {
    return shift_hsic_test_from_grams(gram(k, z.x), gram(l, z.y), num_shifts,
                                      alpha, seed);
}

TestResult shift_hsic_test_from_grams(const GramMatrix& kg,
                                      const GramMatrix& lg, int num_shifts,
                                      double alpha, std::uint64_t seed) {
    if (num_shifts < 1) {
        throw std::invalid_argument("need at least one shift");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (kg.centered || lg.centered) {
        throw std::invalid_argument("shift baseline expects uncentered Grams");
    }
    check_same_size(kg.m, lg.m);
    const Index n = kg.m.rows();
    const Index min_shift = std::max<Index>(20, n / 20);
    if (n < 3 * min_shift) {
        throw std::invalid_argument("series too short for the shift baseline");
    }
    const Matrix a = double_center(kg.m);
    const Matrix b = double_center(lg.m);
    const double nd = static_cast<double>(n);

    TestResult result;
    result.method = "hsic-shift";
    result.alpha = alpha;
    result.seed = seed;
    result.n = n;
    result.replicates = num_shifts;
    result.statistic = (a.array() * b.array()).sum() / nd;

    // Rotating Y by s permutes B's rows and columns jointly; the statistic
    // becomes the Frobenius alignment of A with the rotated B, evaluated
    // block-wise without re-centering (centering commutes with rotations).
    auto rotated_stat = [&](Index s) {
        const Index m = n - s;
        double total =
            (a.topLeftCorner(m, m).array() * b.block(s, s, m, m).array()).sum();
        if (s > 0) {
            total += (a.topRightCorner(m, s).array() * b.block(s, 0, m, s).array())
                         .sum();
            total += (a.bottomLeftCorner(s, m).array() * b.block(0, s, s, m).array())
                         .sum();
            total +=
                (a.bottomRightCorner(s, s).array() * b.topLeftCorner(s, s).array())
                    .sum();
        }
        return total / nd;
    };

    auto gen = rng::stream(seed, rng::purpose::shift);
    std::uniform_int_distribution<Index> pick(min_shift, n - min_shift);
    result.null_samples.reserve(static_cast<std::size_t>(num_shifts));
    for (int i = 0; i < num_shifts; ++i) {
        result.null_samples.push_back(rotated_stat(pick(gen)));
    }
    finalize(result);
    return result;
}

}  // namespace tempest
