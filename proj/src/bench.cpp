#include "tempest/bench.hpp"

#include "tempest/csv.hpp"
#include "tempest/generators.hpp"
#include "tempest/hsic.hpp"
#include "tempest/kernels.hpp"
#include "tempest/lag_hsic.hpp"
#include "tempest/mmd.hpp"
#include "tempest/rng.hpp"
#include "tempest/trial_pool.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tempest {

namespace {

using Clock = std::chrono::steady_clock;

/// Collects per-trial outcomes for one cell.
class CellAccumulator {
  public:
    CellAccumulator(std::string suite, std::string experiment,
                    std::string method, Index nx, Index ny,
                    const BenchOptions& options)
        : start_(Clock::now()) {
        cell_.suite = std::move(suite);
        cell_.experiment = std::move(experiment);
        cell_.method = std::move(method);
        cell_.nx = nx;
        cell_.ny = ny;
        cell_.alpha = options.alpha;
        cell_.seed = options.seed;
        cell_.trial_statistics.reserve(static_cast<std::size_t>(options.trials));
        cell_.trial_thresholds.reserve(static_cast<std::size_t>(options.trials));
        cell_.trial_rejects.reserve(static_cast<std::size_t>(options.trials));
    }

    void add(double statistic, double threshold, bool reject) {
        cell_.trial_statistics.push_back(statistic);
        cell_.trial_thresholds.push_back(threshold);
        cell_.trial_rejects.push_back(reject);
        if (reject) ++cell_.rejections;
    }

    void add(const TestResult& r) { add(r.statistic, r.threshold, r.reject); }

    CellResult finish() {
        cell_.trials = static_cast<int>(cell_.trial_statistics.size());
        if (cell_.trials > 0) {
            double ssum = 0.0, tsum = 0.0;
            for (double v : cell_.trial_statistics) ssum += v;
            for (double v : cell_.trial_thresholds) tsum += v;
            cell_.mean_statistic = ssum / cell_.trials;
            cell_.mean_threshold = tsum / cell_.trials;
            cell_.rejection_rate =
                static_cast<double>(cell_.rejections) / cell_.trials;
        }
        cell_.wall_seconds =
            std::chrono::duration<double>(Clock::now() - start_).count();
        return std::move(cell_);
    }

  private:
    CellResult cell_;
    Clock::time_point start_;
};

BootstrapConfig bootstrap_config(const BenchOptions& o, std::uint64_t seed,
                                 BootstrapVariant variant) {
    BootstrapConfig cfg;
    cfg.block_length = o.block_length;
    cfg.num_replicates = o.replicates;
    cfg.variant = variant;
    cfg.seed = seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// table1-mcmc: two-sample tests on bivariate normal samplers, n = 500 each,
// Gaussian kernel sigma = 1.7, block length 20. Methods: permutation
// baseline, two-process wild bootstrap, paired wild bootstrap (raw and
// centered weights).
// ---------------------------------------------------------------------------

std::vector<CellResult> run_table1_mcmc(const BenchOptions& options) {
    const Index n = 500;
    const KernelSpec kernel = KernelSpec::gaussian(1.7);
    Vector mean0(2), mean_shift(2);
    mean0 << 0.0, 0.0;
    mean_shift << 2.5, 0.0;
    Matrix cov(2, 2);
    cov << 15.5, 14.5, 14.5, 15.5;
    const int thin = 2;  // keep every second full scan

    enum class Sampler { Iid, Gibbs };
    struct Experiment {
        std::string name;
        Sampler sx, sy;
        Vector mean_y;
    };
    const std::vector<Experiment> experiments = {
        {"iid-vs-iid", Sampler::Iid, Sampler::Iid, mean0},
        {"iid-vs-gibbs", Sampler::Iid, Sampler::Gibbs, mean0},
        {"gibbs-vs-gibbs", Sampler::Gibbs, Sampler::Gibbs, mean0},
        {"gibbs-vs-gibbs-meanshift", Sampler::Gibbs, Sampler::Gibbs,
         mean_shift},
    };

    std::vector<CellResult> cells;
    for (std::size_t e = 0; e < experiments.size(); ++e) {
        const auto& exp = experiments[e];
        const std::uint64_t esuite =
            rng::trial_seed(options.seed, static_cast<std::uint64_t>(e));
        CellAccumulator pe(std::string("table1-mcmc"), exp.name,
                           "mmd-permutation", n, n, options);
        CellAccumulator kb(std::string("table1-mcmc"), exp.name, "mmd-wild", n,
                           n, options);
        CellAccumulator v1(std::string("table1-mcmc"), exp.name,
                           "mmd-paired-vb1", n, n, options);
        CellAccumulator v2(std::string("table1-mcmc"), exp.name,
                           "mmd-paired-vb2", n, n, options);
        struct TrialOut {
            TestResult pe, kb, v1, v2;
        };
        const auto outcomes = run_trial_pool(options.trials, [&](int t) {
            const std::uint64_t ts =
                rng::trial_seed(esuite, static_cast<std::uint64_t>(t));
            const std::uint64_t sx = rng::trial_seed(ts, 0);
            const std::uint64_t sy = rng::trial_seed(ts, 1);
            const TimeSeries x = exp.sx == Sampler::Iid
                                     ? gen_iid_normal(n, mean0, cov, sx)
                                     : gen_gibbs_normal(n, mean0, cov, thin, sx);
            const TimeSeries y =
                exp.sy == Sampler::Iid
                    ? gen_iid_normal(n, exp.mean_y, cov, sy)
                    : gen_gibbs_normal(n, exp.mean_y, cov, thin, sy);

            Matrix pooled_rows(2 * n, 2);
            pooled_rows.topRows(n) = x.values();
            pooled_rows.bottomRows(n) = y.values();
            const Matrix g = gram(kernel, TimeSeries(pooled_rows)).m;
            const Matrix kxx = g.topLeftCorner(n, n);
            const Matrix kyy = g.bottomRightCorner(n, n);
            const Matrix kxy = g.topRightCorner(n, n);

            TrialOut out;
            out.pe = mmd_permutation_test_from_gram(
                g, n, n, options.replicates, options.alpha, ts);
            out.kb = mmd_test_from_grams(
                kxx, kyy, kxy,
                bootstrap_config(options, ts, BootstrapVariant::Vb2),
                options.alpha, MmdMode::TwoProcess);
            out.v1 = mmd_test_from_grams(
                kxx, kyy, kxy,
                bootstrap_config(options, ts, BootstrapVariant::Vb1),
                options.alpha, MmdMode::Paired);
            out.v2 = mmd_test_from_grams(
                kxx, kyy, kxy,
                bootstrap_config(options, ts, BootstrapVariant::Vb2),
                options.alpha, MmdMode::Paired);
            return out;
        });
        for (const auto& out : outcomes) {
            pe.add(out.pe);
            kb.add(out.kb);
            v1.add(out.v1);
            v2.add(out.v2);
        }
        cells.push_back(pe.finish());
        cells.push_back(kb.finish());
        cells.push_back(v1.finish());
        cells.push_back(v2.finish());
    }
    return cells;
}

// ---------------------------------------------------------------------------
// table1-audio: two-sample tests on pitch-evoking sounds in R^20, unequal
// sizes (300,200) and (600,400), Gaussian kernel sigma = 14. The null draws
// Y as an independent copy (same smoothing width); the alternative uses a
// narrower width. Larger sizes extend the smaller sample (common random
// numbers across sizes).
// ---------------------------------------------------------------------------

std::vector<CellResult> run_table1_audio(const BenchOptions& options) {
    const int d = 20;
    const double lambda = 0.8;
    const KernelSpec kernel = KernelSpec::gaussian(14.0);
    const Index nx_full = 600, ny_full = 400;
    const std::vector<std::pair<Index, Index>> sizes = {{300, 200}, {600, 400}};

    struct Scenario {
        std::string name;
        double sigma_y;
    };
    const std::vector<Scenario> scenarios = {{"audio-h0", 0.1},
                                             {"audio-h1", 0.05}};

    std::vector<CellResult> cells;
    for (std::size_t sc = 0; sc < scenarios.size(); ++sc) {
        const auto& scen = scenarios[sc];
        const std::uint64_t esuite =
            rng::trial_seed(options.seed, 100 + static_cast<std::uint64_t>(sc));
        std::vector<CellAccumulator> pe, kb;
        for (const auto& [nx, ny] : sizes) {
            pe.emplace_back(std::string("table1-audio"), scen.name,
                            "mmd-permutation", nx, ny, options);
            kb.emplace_back(std::string("table1-audio"), scen.name, "mmd-wild",
                            nx, ny, options);
        }
        const auto outcomes = run_trial_pool(options.trials, [&](int t) {
            const std::uint64_t ts =
                rng::trial_seed(esuite, static_cast<std::uint64_t>(t));
            const TimeSeries x =
                gen_pitch_sound(nx_full, d, 0.1, lambda, rng::trial_seed(ts, 0));
            const TimeSeries y = gen_pitch_sound(ny_full, d, scen.sigma_y,
                                                 lambda, rng::trial_seed(ts, 1));
            const Matrix kxx_full = gram(kernel, x).m;
            const Matrix kyy_full = gram(kernel, y).m;
            const Matrix kxy_full = gram_cross(kernel, x, y);

            // Per size: one permutation result, one wild-bootstrap result.
            std::vector<std::pair<TestResult, TestResult>> out;
            out.reserve(sizes.size());
            for (std::size_t s = 0; s < sizes.size(); ++s) {
                const auto [nx, ny] = sizes[s];
                const Matrix kxx = kxx_full.topLeftCorner(nx, nx);
                const Matrix kyy = kyy_full.topLeftCorner(ny, ny);
                const Matrix kxy = kxy_full.topLeftCorner(nx, ny);
                Matrix pooled(nx + ny, nx + ny);
                pooled.topLeftCorner(nx, nx) = kxx;
                pooled.bottomRightCorner(ny, ny) = kyy;
                pooled.topRightCorner(nx, ny) = kxy;
                pooled.bottomLeftCorner(ny, nx) = kxy.transpose();

                out.emplace_back(
                    mmd_permutation_test_from_gram(pooled, nx, ny,
                                                   options.replicates,
                                                   options.alpha, ts),
                    mmd_test_from_grams(
                        kxx, kyy, kxy,
                        bootstrap_config(options, ts, BootstrapVariant::Vb2),
                        options.alpha, MmdMode::TwoProcess));
            }
            return out;
        });
        for (const auto& out : outcomes) {
            for (std::size_t s = 0; s < sizes.size(); ++s) {
                pe[s].add(out[s].first);
                kb[s].add(out[s].second);
            }
        }
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            cells.push_back(pe[s].finish());
            cells.push_back(kb[s].finish());
        }
    }
    return cells;
}

// ---------------------------------------------------------------------------
// fig1-extinct: instantaneous independence tests on the reconstructed
// extinct-Gaussian pair. Type I cells vary the AR coefficient with X and Y
// from independent realizations; Type II cells vary the extinction radius of
// a coupled pair. Median-heuristic Gaussian kernels per series.
// ---------------------------------------------------------------------------

std::vector<CellResult> run_fig1_extinct(const BenchOptions& options) {
    struct Experiment {
        std::string name;
        double ar;
        double radius;
        bool coupled;
        Index n;
    };
    std::vector<Experiment> experiments;
    for (double ar : {0.1, 0.3, 0.5}) {
        std::ostringstream name;
        name << "extinct-type1-ar" << ar;
        experiments.push_back({name.str(), ar, 1.0, false, 500});
    }
    for (double radius : {0.5, 1.5, 2.5}) {
        std::ostringstream name;
        name << "extinct-type2-radius" << radius;
        experiments.push_back({name.str(), 0.2, radius, true, 1200});
    }

    std::vector<CellResult> cells;
    for (std::size_t e = 0; e < experiments.size(); ++e) {
        const auto& exp = experiments[e];
        const std::uint64_t esuite =
            rng::trial_seed(options.seed, 200 + static_cast<std::uint64_t>(e));
        CellAccumulator v1(std::string("fig1-extinct"), exp.name,
                           "hsic-wild-vb1", exp.n, 0, options);
        CellAccumulator v2(std::string("fig1-extinct"), exp.name,
                           "hsic-wild-vb2", exp.n, 0, options);
        CellAccumulator sh(std::string("fig1-extinct"), exp.name, "hsic-shift",
                           exp.n, 0, options);
        struct TrialOut {
            TestResult v1, v2, sh;
        };
        const auto outcomes = run_trial_pool(options.trials, [&](int t) {
            const std::uint64_t ts =
                rng::trial_seed(esuite, static_cast<std::uint64_t>(t));
            PairedSeries z = [&] {
                if (exp.coupled) {
                    return gen_extinct_gaussian_pair(exp.n, exp.ar, exp.radius,
                                                     rng::trial_seed(ts, 0));
                }
                // Independent null: X and Y from separate realizations.
                PairedSeries a = gen_extinct_gaussian_pair(
                    exp.n, exp.ar, exp.radius, rng::trial_seed(ts, 0));
                PairedSeries b = gen_extinct_gaussian_pair(
                    exp.n, exp.ar, exp.radius, rng::trial_seed(ts, 1));
                return PairedSeries(std::move(a.x), std::move(b.y));
            }();
            const KernelSpec k =
                KernelSpec::gaussian(median_heuristic(z.x));
            const KernelSpec l =
                KernelSpec::gaussian(median_heuristic(z.y));
            const GramMatrix kg = gram(k, z.x);
            const GramMatrix lg = gram(l, z.y);
            TrialOut out;
            out.v1 = instantaneous_independence_test_from_grams(
                kg, lg, bootstrap_config(options, ts, BootstrapVariant::Vb1),
                options.alpha);
            out.v2 = instantaneous_independence_test_from_grams(
                kg, lg, bootstrap_config(options, ts, BootstrapVariant::Vb2),
                options.alpha);
            out.sh = shift_hsic_test_from_grams(kg, lg, options.replicates,
                                                options.alpha, ts);
            return out;
        });
        for (const auto& out : outcomes) {
            v1.add(out.v1);
            v2.add(out.v2);
            sh.add(out.sh);
        }
        cells.push_back(v1.finish());
        cells.push_back(v2.finish());
        cells.push_back(sh.finish());
    }
    return cells;
}

// ---------------------------------------------------------------------------
// fig2-vec / fig2-osc: lag scans. The volatility-coupled pair is dependent
// instantaneously through its shared variance; the oscillator pair couples
// X's phase into Y's amplitude. Null cells pair coordinates of independent
// realizations (vec) or set the coupling to zero (osc).
// ---------------------------------------------------------------------------

std::vector<CellResult> run_lag_suite(
    const std::string& suite, const BenchOptions& options,
    const std::vector<std::pair<std::string, std::function<PairedSeries(
                                                 Index, std::uint64_t)>>>& gens,
    const std::vector<std::pair<std::string, Index>>& cells_spec) {
    std::vector<CellResult> cells;
    for (std::size_t e = 0; e < cells_spec.size(); ++e) {
        const auto& [gen_name, n] = cells_spec[e];
        const auto gen_it =
            std::find_if(gens.begin(), gens.end(),
                         [&](const auto& g) { return g.first == gen_name; });
        const std::uint64_t esuite =
            rng::trial_seed(options.seed, 300 + static_cast<std::uint64_t>(e));
        std::ostringstream exp_name;
        exp_name << gen_name << "-n" << n;
        CellAccumulator acc(suite, exp_name.str(), "lag-hsic", n, 0, options);
        const auto outcomes = run_trial_pool(options.trials, [&](int t) {
            const std::uint64_t ts =
                rng::trial_seed(esuite, static_cast<std::uint64_t>(t));
            const PairedSeries z = gen_it->second(n, ts);
            LagHsicConfig cfg;
            cfg.alpha = options.alpha;
            cfg.bootstrap =
                bootstrap_config(options, ts, BootstrapVariant::Vb2);
            const KernelSpec k = KernelSpec::gaussian(median_heuristic(z.x));
            const KernelSpec l = KernelSpec::gaussian(median_heuristic(z.y));
            return lag_hsic_test(z, k, l, cfg);
        });
        for (const auto& r : outcomes) {
            acc.add(r.max_statistic, r.threshold, r.reject);
        }
        cells.push_back(acc.finish());
    }
    return cells;
}

std::vector<CellResult> run_fig2_vec(const BenchOptions& options) {
    using Gen = std::function<PairedSeries(Index, std::uint64_t)>;
    const std::vector<std::pair<std::string, Gen>> gens = {
        {"vec-h1",
         [](Index n, std::uint64_t s) { return gen_vec_pair(n, 0.45, s); }},
        {"vec-h0",
         [](Index n, std::uint64_t s) {
             PairedSeries a = gen_vec_pair(n, 0.45, rng::trial_seed(s, 0));
             PairedSeries b = gen_vec_pair(n, 0.45, rng::trial_seed(s, 1));
             return PairedSeries(std::move(a.x), std::move(b.y));
         }},
    };
    const std::vector<std::pair<std::string, Index>> cells = {
        {"vec-h1", 600}, {"vec-h1", 1200}, {"vec-h0", 1200}};
    return run_lag_suite("fig2-vec", options, gens, cells);
}

std::vector<CellResult> run_fig2_osc(const BenchOptions& options) {
    using Gen = std::function<PairedSeries(Index, std::uint64_t)>;
    const double f1 = 4.0, f2 = 20.0, ts_period = 0.01;
    const std::vector<std::pair<std::string, Gen>> gens = {
        {"osc-h1",
         [=](Index n, std::uint64_t s) {
             return gen_oscillator_pair(n, 0.4, f1, f2, ts_period, s);
         }},
        {"osc-h0",
         [=](Index n, std::uint64_t s) {
             return gen_oscillator_pair(n, 0.0, f1, f2, ts_period, s);
         }},
    };
    const std::vector<std::pair<std::string, Index>> cells = {
        {"osc-h1", 1000}, {"osc-h1", 2000}, {"osc-h0", 2000}};
    return run_lag_suite("fig2-osc", options, gens, cells);
}

}  // namespace

std::vector<std::string> bench_presets() {
    return {"table1-mcmc", "table1-audio", "fig1-extinct", "fig2-vec",
            "fig2-osc"};
}

std::vector<CellResult> run_suite(const std::string& preset,
                                  const BenchOptions& options) {
    if (options.trials < 1) {
        throw std::invalid_argument("benchmark needs trials >= 1");
    }
    if (preset == "table1-mcmc") return run_table1_mcmc(options);
    if (preset == "table1-audio") return run_table1_audio(options);
    if (preset == "fig1-extinct") return run_fig1_extinct(options);
    if (preset == "fig2-vec") return run_fig2_vec(options);
    if (preset == "fig2-osc") return run_fig2_osc(options);
    throw std::invalid_argument("unknown benchmark preset: " + preset);
}

std::string cells_to_csv(const std::vector<CellResult>& cells) {
    std::ostringstream out;
    out << "suite,experiment,method,n_x,n_y,trials,rejections,rejection_rate,"
           "mean_statistic,mean_threshold,alpha,seed\n";
    for (const auto& c : cells) {
        out << c.suite << ',' << c.experiment << ',' << c.method << ',' << c.nx
            << ',' << c.ny << ',' << c.trials << ',' << c.rejections << ','
            << format_double(c.rejection_rate) << ','
            << format_double(c.mean_statistic) << ','
            << format_double(c.mean_threshold) << ','
            << format_double(c.alpha) << ',' << c.seed << '\n';
    }
    return out.str();
}

std::string cells_to_json(const std::vector<CellResult>& cells) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json obj;
        obj["suite"] = c.suite;
        obj["experiment"] = c.experiment;
        obj["method"] = c.method;
        obj["n_x"] = c.nx;
        obj["n_y"] = c.ny;
        obj["trials"] = c.trials;
        obj["rejections"] = c.rejections;
        obj["rejection_rate"] = c.rejection_rate;
        obj["mean_statistic"] = c.mean_statistic;
        obj["mean_threshold"] = c.mean_threshold;
        obj["alpha"] = c.alpha;
        obj["seed"] = c.seed;
        obj["trial_statistics"] = c.trial_statistics;
        obj["trial_thresholds"] = c.trial_thresholds;
        obj["trial_rejects"] = c.trial_rejects;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace tempest
