// tempest: wild-bootstrap kernel tests for time series.
//
// Subcommands:
//   mmd-test   two-sample test (wild bootstrap, paired, or permutation)
//   hsic-test  instantaneous independence test (wild bootstrap or shift)
//   lag-hsic   independence scan over lags with Bonferroni/GPD threshold
//   generate   write a synthetic process to CSV
//   bench      run a named benchmark suite
//
// All randomness is seeded; a fixed --seed reproduces output byte for byte.
// Timings go to stderr so files and stdout stay deterministic.

#include "tempest/bench.hpp"
#include "tempest/csv.hpp"
#include "tempest/generators.hpp"
#include "tempest/hsic.hpp"
#include "tempest/kernels.hpp"
#include "tempest/lag_hsic.hpp"
#include "tempest/mmd.hpp"
#include "tempest/test_result.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using tempest::Index;
using Json = nlohmann::ordered_json;

struct CommonOpts {
    double alpha = 0.05;
    double block_size = 20.0;
    int replicates = 300;
    std::string variant = "vb2";
    std::string kernel = "gaussian";
    std::string bandwidth = "median";
    std::uint64_t seed = 0;
    std::string factor6 = "on";
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha, "Test level in (0,1)")
        ->envname("TEMPEST_ALPHA")
        ->capture_default_str();
    cmd->add_option("--block-size", o.block_size,
                    "Wild bootstrap block length l_n")
        ->envname("TEMPEST_BLOCK_SIZE")
        ->capture_default_str();
    cmd->add_option("--replicates", o.replicates,
                    "Bootstrap/permutation/shift replicates B")
        ->envname("TEMPEST_REPLICATES")
        ->capture_default_str();
    cmd->add_option("--variant", o.variant, "Bootstrap variant: vb1|vb2")
        ->envname("TEMPEST_VARIANT")
        ->check(CLI::IsMember({"vb1", "vb2"}))
        ->capture_default_str();
    cmd->add_option("--kernel", o.kernel, "Kernel family: gaussian|laplacian")
        ->envname("TEMPEST_KERNEL")
        ->check(CLI::IsMember({"gaussian", "laplacian"}))
        ->capture_default_str();
    cmd->add_option("--bandwidth", o.bandwidth,
                    "Kernel bandwidth: positive real or 'median'")
        ->envname("TEMPEST_BANDWIDTH")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Root seed (u64)")
        ->envname("TEMPEST_SEED")
        ->capture_default_str();
    cmd->add_option("--factor6", o.factor6,
                    "Apply the degree-4 pair factor to the bootstrap null "
                    "(independence tests): on|off")
        ->envname("TEMPEST_FACTOR6")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd->add_option("--format", o.format, "Output format: json|csv")
        ->envname("TEMPEST_FORMAT")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

tempest::KernelSpec make_kernel(const CommonOpts& o,
                                const tempest::TimeSeries& data) {
    tempest::KernelSpec spec;
    spec.family = o.kernel == "laplacian" ? tempest::KernelFamily::Laplacian
                                          : tempest::KernelFamily::Gaussian;
    if (o.bandwidth != "median") {
        spec.bandwidth = std::stod(o.bandwidth);
    }
    return tempest::resolve_bandwidth(spec, data);
}

tempest::BootstrapConfig make_bootstrap(const CommonOpts& o) {
    tempest::BootstrapConfig cfg;
    cfg.block_length = o.block_size;
    cfg.num_replicates = o.replicates;
    cfg.variant = o.variant == "vb1" ? tempest::BootstrapVariant::Vb1
                                     : tempest::BootstrapVariant::Vb2;
    cfg.seed = o.seed;
    return cfg;
}

Json result_to_json(const tempest::TestResult& r) {
    Json obj;
    obj["method"] = r.method;
    obj["statistic"] = r.statistic;
    obj["threshold"] = r.threshold;
    obj["p_value"] = r.p_value;
    obj["reject"] = r.reject;
    obj["alpha"] = r.alpha;
    obj["n"] = r.n;
    obj["B"] = r.replicates;
    obj["l_n"] = r.block_length;
    obj["seed"] = r.seed;
    obj["factor_applied"] = r.factor_applied;
    obj["notes"] = r.notes;
    return obj;
}

std::string result_to_csv(const tempest::TestResult& r) {
    std::string out =
        "method,statistic,threshold,p_value,reject,alpha,n,B,l_n,seed,"
        "factor_applied,notes\n";
    out += r.method + ',' + tempest::format_double(r.statistic) + ',' +
           tempest::format_double(r.threshold) + ',' +
           tempest::format_double(r.p_value) + ',' +
           (r.reject ? "true" : "false") + ',' +
           tempest::format_double(r.alpha) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.replicates) + ',' +
           tempest::format_double(r.block_length) + ',' +
           std::to_string(r.seed) + ',' +
           tempest::format_double(r.factor_applied) + ',' + r.notes + '\n';
    return out;
}

void emit_result(const tempest::TestResult& r, const CommonOpts& o) {
    if (o.format == "csv") {
        std::cout << result_to_csv(r);
    } else {
        std::cout << result_to_json(r).dump(2) << '\n';
    }
}

class Stopwatch {
  public:
    explicit Stopwatch(std::string label) : label_(std::move(label)) {}
    ~Stopwatch() {
        const auto elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - start_);
        std::cerr << label_ << ": " << elapsed.count() << " s\n";
    }

  private:
    std::string label_;
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Wild-bootstrap kernel hypothesis tests for temporally dependent "
        "data"};
    app.require_subcommand(1);

    // --- mmd-test ---
    CommonOpts mmd_opts;
    std::string mmd_x, mmd_y, mmd_mode = "wild";
    bool mmd_header = false;
    auto* mmd_cmd = app.add_subcommand(
        "mmd-test", "Two-sample test: do X and Y share a distribution?");
    mmd_cmd->add_option("--x", mmd_x, "CSV with sample X")->required();
    mmd_cmd->add_option("--y", mmd_y, "CSV with sample Y")->required();
    mmd_cmd->add_option("--mode", mmd_mode,
                        "wild (two-process) | paired | permutation")
        ->check(CLI::IsMember({"wild", "paired", "permutation"}))
        ->capture_default_str();
    mmd_cmd->add_flag("--header", mmd_header, "Input CSVs have a header row");
    add_common(mmd_cmd, mmd_opts);

    // --- hsic-test ---
    CommonOpts hsic_opts;
    std::string hsic_x, hsic_y, hsic_mode = "wild";
    bool hsic_header = false;
    auto* hsic_cmd = app.add_subcommand(
        "hsic-test",
        "Instantaneous independence test between aligned series X and Y");
    hsic_cmd->add_option("--x", hsic_x, "CSV with series X")->required();
    hsic_cmd->add_option("--y", hsic_y, "CSV with series Y")->required();
    hsic_cmd->add_option("--mode", hsic_mode, "wild | shift")
        ->check(CLI::IsMember({"wild", "shift"}))
        ->capture_default_str();
    hsic_cmd->add_flag("--header", hsic_header, "Input CSVs have a header row");
    add_common(hsic_cmd, hsic_opts);

    // --- lag-hsic ---
    CommonOpts lag_opts;
    std::string lag_x, lag_y, lag_lags = "auto", lag_gpd = "on";
    bool lag_header = false;
    auto* lag_cmd = app.add_subcommand(
        "lag-hsic", "Independence scan over lagged pairings (X_t, Y_{t+m})");
    lag_cmd->add_option("--x", lag_x, "CSV with series X")->required();
    lag_cmd->add_option("--y", lag_y, "CSV with series Y")->required();
    lag_cmd->add_option("--lags", lag_lags, "Lag radius M: integer or 'auto'")
        ->envname("TEMPEST_LAGS")
        ->capture_default_str();
    lag_cmd->add_option("--gpd", lag_gpd,
                        "Generalized-Pareto tail threshold: on|off")
        ->envname("TEMPEST_GPD")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    lag_cmd->add_flag("--header", lag_header, "Input CSVs have a header row");
    add_common(lag_cmd, lag_opts);

    // --- generate ---
    std::string gen_family, gen_out, gen_out_y;
    Index gen_n = 500;
    std::uint64_t gen_seed = 0;
    double gen_ar = 0.5, gen_radius = 1.0, gen_coupling = 0.45, gen_c = 0.4;
    double gen_sigma_frac = 0.1, gen_lambda = 0.8;
    int gen_thin = 2, gen_dim = 20;
    bool gen_header = false;
    auto* gen_cmd =
        app.add_subcommand("generate", "Write a synthetic process to CSV");
    gen_cmd
        ->add_option("--family", gen_family,
                     "gibbs | iid-normal | pitch | extinct | vec | oscillator "
                     "| ar1 | white-noise")
        ->required()
        ->check(CLI::IsMember({"gibbs", "iid-normal", "pitch", "extinct",
                               "vec", "oscillator", "ar1", "white-noise"}));
    gen_cmd->add_option("--n", gen_n, "Series length")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output CSV path (X)")->required();
    gen_cmd->add_option("--out-y", gen_out_y,
                        "Second output CSV path (Y, paired families)");
    gen_cmd->add_option("--seed", gen_seed, "Seed")
        ->envname("TEMPEST_SEED")
        ->capture_default_str();
    gen_cmd->add_option("--ar", gen_ar, "AR coefficient (extinct, ar1)")
        ->capture_default_str();
    gen_cmd->add_option("--radius", gen_radius, "Extinction radius (extinct)")
        ->capture_default_str();
    gen_cmd->add_option("--coupling", gen_coupling, "Variance coupling (vec)")
        ->capture_default_str();
    gen_cmd->add_option("--c", gen_c, "Amplitude coupling (oscillator)")
        ->capture_default_str();
    gen_cmd
        ->add_option("--sigma-frac", gen_sigma_frac,
                     "Smoothing width as a fraction of the period (pitch)")
        ->capture_default_str();
    gen_cmd->add_option("--lambda", gen_lambda, "Pattern AR coefficient (pitch)")
        ->capture_default_str();
    gen_cmd->add_option("--thin", gen_thin, "Keep every thin-th scan (gibbs)")
        ->capture_default_str();
    gen_cmd->add_option("--dim", gen_dim, "Observation dimension (pitch)")
        ->capture_default_str();
    gen_cmd->add_flag("--csv-header", gen_header, "Write a header row");

    // --- bench ---
    std::string bench_suite, bench_out_prefix = "bench";
    int bench_trials = 200;
    CommonOpts bench_opts;
    auto* bench_cmd =
        app.add_subcommand("bench", "Run a named benchmark suite");
    bench_cmd->add_option("--suite", bench_suite, "Preset name")
        ->required()
        ->check(CLI::IsMember(tempest::bench_presets()));
    bench_cmd->add_option("--trials", bench_trials, "Trials per cell")
        ->envname("TEMPEST_TRIALS")
        ->capture_default_str();
    bench_cmd
        ->add_option("--out-prefix", bench_out_prefix,
                     "Write <prefix>.csv and <prefix>.json")
        ->capture_default_str();
    add_common(bench_cmd, bench_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mmd_cmd) {
            Stopwatch timer("mmd-test");
            const tempest::TimeSeries x = tempest::load_csv(mmd_x, mmd_header);
            const tempest::TimeSeries y = tempest::load_csv(mmd_y, mmd_header);
            tempest::TwoSampleInput input{x, y, tempest::KernelSpec{}};
            // Resolve the bandwidth on the pooled sample so both Grams use
            // one kernel.
            tempest::Matrix pooled(x.n() + y.n(), x.dim());
            pooled.topRows(x.n()) = x.values();
            pooled.bottomRows(y.n()) = y.values();
            input.kernel =
                make_kernel(mmd_opts, tempest::TimeSeries(pooled));
            tempest::TestResult r;
            if (mmd_mode == "permutation") {
                r = tempest::mmd_permutation_test(input, mmd_opts.replicates,
                                                  mmd_opts.alpha,
                                                  mmd_opts.seed);
            } else {
                r = tempest::mmd_test(input, make_bootstrap(mmd_opts),
                                      mmd_opts.alpha,
                                      mmd_mode == "paired"
                                          ? tempest::MmdMode::Paired
                                          : tempest::MmdMode::TwoProcess);
            }
            emit_result(r, mmd_opts);
        } else if (*hsic_cmd) {
            Stopwatch timer("hsic-test");
            const tempest::PairedSeries z(tempest::load_csv(hsic_x, hsic_header),
                                          tempest::load_csv(hsic_y, hsic_header));
            const tempest::KernelSpec k = make_kernel(hsic_opts, z.x);
            const tempest::KernelSpec l = make_kernel(hsic_opts, z.y);
            tempest::TestResult r;
            if (hsic_mode == "shift") {
                r = tempest::shift_hsic_test(z, k, l, hsic_opts.replicates,
                                             hsic_opts.alpha, hsic_opts.seed);
            } else {
                r = tempest::instantaneous_independence_test(
                    z, k, l, make_bootstrap(hsic_opts), hsic_opts.alpha,
                    hsic_opts.factor6 == "on");
            }
            emit_result(r, hsic_opts);
        } else if (*lag_cmd) {
            Stopwatch timer("lag-hsic");
            const tempest::PairedSeries z(tempest::load_csv(lag_x, lag_header),
                                          tempest::load_csv(lag_y, lag_header));
            tempest::LagHsicConfig cfg;
            if (lag_lags != "auto") cfg.lag_radius = std::stoi(lag_lags);
            cfg.alpha = lag_opts.alpha;
            cfg.bootstrap = make_bootstrap(lag_opts);
            cfg.gpd_enabled = lag_gpd == "on";
            cfg.factor6 = lag_opts.factor6 == "on";
            const tempest::KernelSpec k = make_kernel(lag_opts, z.x);
            const tempest::KernelSpec l = make_kernel(lag_opts, z.y);
            const tempest::LagScanResult r =
                tempest::lag_hsic_test(z, k, l, cfg);
            if (lag_opts.format == "csv") {
                std::string out =
                    "lag,statistic,threshold,reject,q,argmax_lag,n,seed\n";
                for (std::size_t i = 0; i < r.lags.size(); ++i) {
                    out += std::to_string(r.lags[i]) + ',' +
                           tempest::format_double(r.statistics[i]) + ',' +
                           tempest::format_double(r.threshold) + ',' +
                           (r.reject ? "true" : "false") + ',' +
                           tempest::format_double(r.q) + ',' +
                           std::to_string(r.argmax_lag) + ',' +
                           std::to_string(r.n) + ',' + std::to_string(r.seed) +
                           '\n';
                }
                std::cout << out;
            } else {
                Json obj;
                obj["method"] = "lag-hsic";
                obj["lags"] = r.lags;
                obj["statistics"] = r.statistics;
                obj["max_statistic"] = r.max_statistic;
                obj["argmax_lag"] = r.argmax_lag;
                obj["threshold"] = r.threshold;
                obj["q"] = r.q;
                obj["reject"] = r.reject;
                obj["threshold_source"] =
                    r.threshold_source == tempest::QuantileSource::GpdTail
                        ? "gpd-tail"
                        : "empirical";
                obj["n"] = r.n;
                obj["B"] = cfg.bootstrap.num_replicates;
                obj["l_n"] = cfg.bootstrap.block_length;
                obj["seed"] = r.seed;
                obj["notes"] = r.notes;
                std::cout << obj.dump(2) << '\n';
            }
        } else if (*gen_cmd) {
            Stopwatch timer("generate");
            if (gen_family == "gibbs" || gen_family == "iid-normal") {
                tempest::Vector mean(2);
                mean << 0.0, 0.0;
                tempest::Matrix cov(2, 2);
                cov << 15.5, 14.5, 14.5, 15.5;
                const tempest::TimeSeries s =
                    gen_family == "gibbs"
                        ? tempest::gen_gibbs_normal(gen_n, mean, cov, gen_thin,
                                                    gen_seed)
                        : tempest::gen_iid_normal(gen_n, mean, cov, gen_seed);
                tempest::save_csv(gen_out, s, gen_header);
            } else if (gen_family == "pitch") {
                tempest::save_csv(
                    gen_out,
                    tempest::gen_pitch_sound(gen_n, gen_dim, gen_sigma_frac,
                                             gen_lambda, gen_seed),
                    gen_header);
            } else {
                tempest::PairedSeries z = [&] {
                    if (gen_family == "extinct") {
                        return tempest::gen_extinct_gaussian_pair(
                            gen_n, gen_ar, gen_radius, gen_seed);
                    }
                    if (gen_family == "vec") {
                        return tempest::gen_vec_pair(gen_n, gen_coupling,
                                                     gen_seed);
                    }
                    if (gen_family == "oscillator") {
                        return tempest::gen_oscillator_pair(
                            gen_n, gen_c, 4.0, 20.0, 0.01, gen_seed);
                    }
                    if (gen_family == "ar1") {
                        return tempest::gen_ar1_pair(gen_n, gen_ar, gen_seed);
                    }
                    return tempest::gen_white_noise_pair(gen_n, gen_seed);
                }();
                if (gen_out_y.empty()) {
                    throw std::runtime_error(
                        "paired family needs --out-y for the second series");
                }
                tempest::save_csv(gen_out, z.x, gen_header);
                tempest::save_csv(gen_out_y, z.y, gen_header);
            }
        } else if (*bench_cmd) {
            Stopwatch timer("bench");
            tempest::BenchOptions opt;
            opt.trials = bench_trials;
            opt.alpha = bench_opts.alpha;
            opt.seed = bench_opts.seed;
            opt.replicates = bench_opts.replicates;
            opt.block_length = bench_opts.block_size;
            const auto cells = tempest::run_suite(bench_suite, opt);
            const std::string csv = tempest::cells_to_csv(cells);
            const std::string json = tempest::cells_to_json(cells);
            {
                std::ofstream f(bench_out_prefix + ".csv");
                f << csv;
            }
            {
                std::ofstream f(bench_out_prefix + ".json");
                f << json;
            }
            std::cout << csv;
            for (const auto& c : cells) {
                std::cerr << c.suite << '/' << c.experiment << '/' << c.method
                          << ": " << c.wall_seconds << " s\n";
            }
        }
    } catch (const std::exception& err) {
        Json obj;
        obj["error"] = err.what();
        std::cerr << obj.dump() << '\n';
        return 1;
    }
    return 0;
}
