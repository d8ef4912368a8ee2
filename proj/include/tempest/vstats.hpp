#pragma once

#include "tempest/series.hpp"

#include <functional>
#include <span>

namespace tempest {

/// A symmetric core function of `arity` sample indices. The callable receives
/// the indices (each in [0, n)) and returns the core value; it must be
/// invariant under permutations of its arguments for the V-statistic theory
/// to apply. Used by the reference (naive) evaluators below.
struct IndexCore {
    int arity = 2;
    std::function<double(std::span<const Index>)> eval;
};

/// Largest index-tuple count the naive evaluators will enumerate (n^arity).
inline constexpr double kNaiveBudget = 1048576.0;  // 2^20

/// Plain V-statistic: n^{-m} sum over all m-tuples of core(i1..im).
/// Reference implementation, O(n^m); throws if n^m exceeds the budget.
double v_naive(const IndexCore& core, Index n);

/// Raw wild-bootstrap V-statistic: n^{-m} sum over tuples of
/// w[i1] * w[i2] * core(i1..im) — only the first two weights enter.
double vb1_naive(const IndexCore& core, Index n, const Vector& w);

/// Centered variant: same contraction with w replaced by w - mean(w).
double vb2_naive(const IndexCore& core, Index n, const Vector& w);

/// Max absolute deviation of core under `trials` random argument
/// permutations, sampled from tuples over [0, n). Zero for symmetric cores.
double core_symmetry_defect(const IndexCore& core, Index n, int trials,
                            std::uint64_t seed);

}  // namespace tempest
