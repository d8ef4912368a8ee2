#pragma once

#include "tempest/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tempest {

/// One experiment x method cell of a benchmark suite.
struct CellResult {
    std::string suite;
    std::string experiment;
    std::string method;
    Index nx = 0;
    Index ny = 0;  // 0 for single-series (independence) experiments
    int trials = 0;
    int rejections = 0;
    double rejection_rate = 0.0;
    double mean_statistic = 0.0;
    double mean_threshold = 0.0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<double> trial_statistics;
    std::vector<double> trial_thresholds;
    std::vector<bool> trial_rejects;
    double wall_seconds = 0.0;  // measured, excluded from serialized output
};

struct BenchOptions {
    int trials = 200;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int replicates = 300;
    double block_length = 20.0;
};

/// Known presets: table1-mcmc, table1-audio, fig1-extinct, fig2-vec,
/// fig2-osc.
std::vector<std::string> bench_presets();

/// Runs one preset; throws on unknown names. Fully deterministic given
/// options.seed (timings aside).
std::vector<CellResult> run_suite(const std::string& preset,
                                  const BenchOptions& options);

/// Long-format CSV: one row per cell, stable column order, timings omitted.
std::string cells_to_csv(const std::vector<CellResult>& cells);

/// JSON array of cell objects including per-trial records, stable key order,
/// timings omitted.
std::string cells_to_json(const std::vector<CellResult>& cells);

}  // namespace tempest
