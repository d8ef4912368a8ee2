#include "tempest/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tempest {

namespace {

double require_bandwidth(const KernelSpec& spec) {
    if (!spec.bandwidth)
        throw std::invalid_argument("kernel: bandwidth not resolved (use resolve_bandwidth)");
    const double sigma = *spec.bandwidth;
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("kernel: bandwidth must be a positive real");
    return sigma;
}

}  // namespace

double evaluate_kernel(const KernelSpec& spec, const RowVec& a, const RowVec& b) {
    const double sigma = require_bandwidth(spec);
    if (a.size() != b.size())
        throw std::invalid_argument("kernel: dimension mismatch");
    if (!a.allFinite() || !b.allFinite())
        throw std::invalid_argument("kernel: non-finite input");
    switch (spec.family) {
        case KernelFamily::Gaussian:
            return std::exp(-(a - b).squaredNorm() / (2.0 * sigma * sigma));
        case KernelFamily::Laplacian:
            return std::exp(-(a - b).cwiseAbs().sum() / sigma);
    }
    throw std::logic_error("kernel: unknown family");
}

GramMatrix gram(const KernelSpec& spec, const TimeSeries& z) {
    const double sigma = require_bandwidth(spec);
    const Index n = z.n();
    if (n < 2) throw std::invalid_argument("gram: need at least two observations");

    const Matrix& x = z.values();
    Matrix dist(n, n);
    dist.diagonal().setZero();
    if (spec.family == KernelFamily::Gaussian) {
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) {
                const double d2 = (x.row(i) - x.row(j)).squaredNorm();
                dist(i, j) = d2;
                dist(j, i) = d2;
            }
        GramMatrix g;
        g.m = (-dist.array() / (2.0 * sigma * sigma)).exp();
        return g;
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double d1 = (x.row(i) - x.row(j)).cwiseAbs().sum();
            dist(i, j) = d1;
            dist(j, i) = d1;
        }
    GramMatrix g;
    g.m = (-dist.array() / sigma).exp();
    return g;
}

Matrix gram_cross(const KernelSpec& spec, const TimeSeries& a, const TimeSeries& b) {
    const double sigma = require_bandwidth(spec);
    if (a.dim() != b.dim())
        throw std::invalid_argument("gram_cross: dimension mismatch");
    const Index na = a.n(), nb = b.n();
    Matrix dist(na, nb);
    if (spec.family == KernelFamily::Gaussian) {
        for (Index i = 0; i < na; ++i)
            for (Index j = 0; j < nb; ++j)
                dist(i, j) = (a.row(i) - b.row(j)).squaredNorm();
        return (-dist.array() / (2.0 * sigma * sigma)).exp();
    }
    for (Index i = 0; i < na; ++i)
        for (Index j = 0; j < nb; ++j)
            dist(i, j) = (a.row(i) - b.row(j)).cwiseAbs().sum();
    return (-dist.array() / sigma).exp();
}

GramMatrix center(const GramMatrix& g) {
    if (g.centered)
        throw std::invalid_argument("center: input already centered");
    const Index n = g.n();
    const Vector row_mean = g.m.rowwise().mean();
    const double grand_mean = row_mean.mean();
    GramMatrix out;
    // H G H = G - r 1' - 1 r' + g 1 1' for symmetric G (row means == col means).
    out.m = g.m;
    out.m.colwise() -= row_mean;
    out.m.rowwise() -= row_mean.transpose();
    out.m.array() += grand_mean;
    out.centered = true;
    return out;
}

double median_heuristic(const TimeSeries& z, std::int64_t max_pairs) {
    const Index n = z.n();
    if (n < 2) throw std::invalid_argument("median_heuristic: need at least two observations");
    if (max_pairs < 1) throw std::invalid_argument("median_heuristic: max_pairs must be positive");

    const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const std::int64_t stride = (total + max_pairs - 1) / max_pairs;  // 1 when all pairs fit
    const Matrix& x = z.values();

    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(std::min(total, max_pairs)));
    for (std::int64_t p = 0; p < total; p += stride) {
        // Invert the row-major upper-triangle linearization: pair p -> (i, j).
        std::int64_t i = 0;
        std::int64_t rem = p;
        std::int64_t row_len = n - 1;
        while (rem >= row_len) {
            rem -= row_len;
            ++i;
            --row_len;
        }
        const std::int64_t j = i + 1 + rem;
        dists.push_back((x.row(i) - x.row(j)).norm());
    }

    const std::size_t count = dists.size();
    const std::size_t mid = count / 2;
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
    double med = dists[mid];
    if (count % 2 == 0) {
        const double lower =
            *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (lower + med);
    }
    if (!(med > 0.0))
        throw std::invalid_argument(
            "median_heuristic: median pairwise distance is zero; supply an explicit bandwidth");
    return med;
}

KernelSpec resolve_bandwidth(const KernelSpec& spec, const TimeSeries& z,
                             std::int64_t max_pairs) {
    if (spec.bandwidth) return spec;
    KernelSpec out = spec;
    out.bandwidth = median_heuristic(z, max_pairs);
    return out;
}

}  // namespace tempest
