#include "tempest/vstats.hpp"

#include "tempest/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace tempest {

namespace {

void check_core(const IndexCore& core) {
    if (core.arity < 1 || !core.eval) {
        throw std::invalid_argument("index core needs arity >= 1 and a callable");
    }
}

void check_budget(const IndexCore& core, Index n) {
    check_core(core);
    if (n < 1) throw std::invalid_argument("V-statistic needs n >= 1");
    if (std::pow(static_cast<double>(n), core.arity) > kNaiveBudget) {
        throw std::invalid_argument(
            "naive V-statistic enumeration exceeds its budget; "
            "use the closed-form evaluators for large n");
    }
}

/// Runs fn over every tuple in [0, n)^arity.
template <typename Fn>
void for_each_tuple(Index n, int arity, Fn&& fn) {
    std::vector<Index> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
        fn(std::span<const Index>(idx));
        int pos = arity - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

double weighted_sum(const IndexCore& core, Index n, const Vector* w) {
    check_budget(core, n);
    if (w && w->size() != n) {
        throw std::invalid_argument("weight vector length must equal n");
    }
    double total = 0.0;
    for_each_tuple(n, core.arity, [&](std::span<const Index> idx) {
        double term = core.eval(idx);
        if (w) {
            term *= (*w)[idx[0]];
            if (core.arity >= 2) term *= (*w)[idx[1]];
        }
        total += term;
    });
    return total / std::pow(static_cast<double>(n), core.arity);
}

}  // namespace

double v_naive(const IndexCore& core, Index n) {
    return weighted_sum(core, n, nullptr);
}

double vb1_naive(const IndexCore& core, Index n, const Vector& w) {
    return weighted_sum(core, n, &w);
}

double vb2_naive(const IndexCore& core, Index n, const Vector& w) {
    Vector centered = w.array() - w.mean();
    return weighted_sum(core, n, &centered);
}

double core_symmetry_defect(const IndexCore& core, Index n, int trials,
                            std::uint64_t seed) {
    check_core(core);
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("symmetry check needs n >= 1, trials >= 1");
    }
    auto gen = rng::stream(seed, rng::purpose::trial);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    std::vector<Index> idx(static_cast<std::size_t>(core.arity));
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        for (auto& i : idx) i = pick(gen);
        const double base = core.eval(std::span<const Index>(idx));
        auto perm = idx;
        std::shuffle(perm.begin(), perm.end(), gen);
        const double shuffled = core.eval(std::span<const Index>(perm));
        worst = std::max(worst, std::abs(shuffled - base));
    }
    return worst;
}

}  // namespace tempest
