#include "conex/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "conex/csv.hpp"
#include "conex/curves.hpp"
#include "conex/parallel.hpp"

namespace conex {

namespace fs = std::filesystem;

std::vector<RunResult> run_seeds(const ExperimentConfig& config) {
    std::vector<RunResult> results(config.seeds.size());
    parallel_for(static_cast<long>(config.seeds.size()), [&](long i) {
        std::uint64_t seed = config.seeds[i];
        auto agent = make_agent(config.agent, config.environment, config.horizon);
        results[i].seed = seed;
        results[i].run = run_conservative(config.environment, *agent, config.meta, config.baseline,
                                          config.horizon, seed);
    });
    return results;
}

namespace {

double quantile_sorted(std::vector<double>& values, double q) {
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

AggregateSummary aggregate(const ExperimentConfig& config, const std::vector<RunResult>& results) {
    if (results.empty()) throw std::invalid_argument("aggregate: no runs");
    AggregateSummary summary;
    summary.horizon = config.horizon;
    summary.v_star = results.front().run.trace.v_star;
    const long T = config.horizon;
    const std::size_t n = results.size();

    // per-run cumulative series
    std::vector<std::vector<double>> regret(n), slack(n);
    const double floor_per_round = (1.0 - config.baseline.alpha) * config.baseline.v0;
    for (std::size_t r = 0; r < n; ++r) {
        const RunTrace& trace = results[r].run.trace;
        if (trace.length() != T) throw std::logic_error("aggregate: trace length mismatch");
        regret[r].resize(T);
        slack[r].resize(T);
        double cum_regret = 0.0, earned = 0.0;
        int violations = 0, first = 0;
        for (long t = 0; t < T; ++t) {
            cum_regret += trace.v_star - trace.records[t].true_value;
            earned += trace.records[t].true_value;
            regret[r][t] = cum_regret;
            slack[r][t] = earned - floor_per_round * static_cast<double>(t + 1);
            if (slack[r][t] < -kSlackTol) {
                violations += 1;
                if (first == 0) first = static_cast<int>(t + 1);
            }
        }
        summary.seeds.push_back(results[r].seed);
        summary.final_regret.push_back(cum_regret);
        summary.baseline_plays.push_back(results[r].run.baseline_plays);
        summary.violation_counts.push_back(violations);
        summary.first_violation.push_back(first);
        if (violations > 0) summary.violating_runs += 1;
    }

    summary.regret_mean.resize(T);
    summary.regret_q10.resize(T);
    summary.regret_q50.resize(T);
    summary.regret_q90.resize(T);
    summary.slack_mean.resize(T);
    summary.slack_q10.resize(T);
    summary.slack_q50.resize(T);
    summary.slack_q90.resize(T);
    std::vector<double> column(n);
    for (long t = 0; t < T; ++t) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            column[r] = regret[r][t];
            sum += column[r];
        }
        summary.regret_mean[t] = sum / static_cast<double>(n);
        summary.regret_q10[t] = quantile_sorted(column, 0.10);
        summary.regret_q50[t] = quantile_sorted(column, 0.50);
        summary.regret_q90[t] = quantile_sorted(column, 0.90);
        sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            column[r] = slack[r][t];
            sum += column[r];
        }
        summary.slack_mean[t] = sum / static_cast<double>(n);
        summary.slack_q10[t] = quantile_sorted(column, 0.10);
        summary.slack_q50[t] = quantile_sorted(column, 0.50);
        summary.slack_q90[t] = quantile_sorted(column, 0.90);
    }
    return summary;
}

namespace {

void write_summary_files(const ExperimentConfig& config, const AggregateSummary& summary,
                         const fs::path& dir) {
    {
        std::ofstream out(dir / "summary_rounds.csv", std::ios::binary);
        out << "t,regret_mean,regret_q10,regret_q50,regret_q90,"
               "slack_mean,slack_q10,slack_q50,slack_q90\n";
        for (long t = 0; t < summary.horizon; ++t) {
            out << (t + 1) << ',' << format_double(summary.regret_mean[t]) << ','
                << format_double(summary.regret_q10[t]) << ','
                << format_double(summary.regret_q50[t]) << ','
                << format_double(summary.regret_q90[t]) << ','
                << format_double(summary.slack_mean[t]) << ','
                << format_double(summary.slack_q10[t]) << ','
                << format_double(summary.slack_q50[t]) << ','
                << format_double(summary.slack_q90[t]) << '\n';
        }
    }
    {
        std::ofstream out(dir / "summary_runs.csv", std::ios::binary);
        out << "seed,final_regret,baseline_plays,violation_count,first_violation_t,v_star\n";
        for (std::size_t r = 0; r < summary.seeds.size(); ++r) {
            out << summary.seeds[r] << ',' << format_double(summary.final_regret[r]) << ','
                << summary.baseline_plays[r] << ',' << summary.violation_counts[r] << ','
                << summary.first_violation[r] << ',' << format_double(summary.v_star) << '\n';
        }
    }
    std::ofstream cfg(dir / "config_resolved.json", std::ios::binary);
    cfg << config.to_json().dump(2) << "\n";
}

void write_reference_curve(const ExperimentConfig& config, const fs::path& dir) {
    if (!config.reference_scale) return;
    CurveParams params;
    params.alpha = config.baseline.alpha;
    params.v0 = config.baseline.v0;
    params.delta0 = config.baseline.delta0.value_or(0.0);
    params.scale = *config.reference_scale;
    std::string setting;
    if (const auto* mab = std::get_if<MabInstance>(&config.environment)) {
        setting = "mab";
        params.num_actions = mab->num_arms();
    } else if (const auto* lin = std::get_if<LinearBanditInstance>(&config.environment)) {
        setting = "linear_bandit";
        params.dim = lin->dim();
    } else if (const auto* tab = std::get_if<TabularMdpInstance>(&config.environment)) {
        setting = "tabular";
        params.num_states = tab->num_states;
        params.num_actions = tab->num_actions;
        params.horizon_steps = tab->horizon;
    } else if (const auto* low = std::get_if<LowRankMdpInstance>(&config.environment)) {
        setting = "low_rank";
        params.dim = low->dim;
        params.horizon_steps = low->horizon;
    }
    std::vector<double> grid;
    for (long t = 1; t <= config.horizon; t += std::max<long>(1, config.horizon / 1000))
        grid.push_back(static_cast<double>(t));
    std::vector<double> values = reference_curve(setting, params, grid);
    std::ofstream out(dir / "reference_curve.csv", std::ios::binary);
    out << "t,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << static_cast<long>(grid[i]) << ',' << format_double(values[i]) << '\n';
    nlohmann::json meta;
    meta["setting"] = setting;
    meta["scale"] = params.scale;
    meta["alpha"] = params.alpha;
    meta["v0"] = params.v0;
    meta["delta0"] = params.delta0;
    meta["note"] = "rate-plus-constant overlay; log factors dropped; scale is a plotting knob";
    std::ofstream mf(dir / "reference_curve_meta.json", std::ios::binary);
    mf << meta.dump(2) << "\n";
}

}  // namespace

AggregateSummary run_experiment(const ExperimentConfig& config) {
    std::vector<RunResult> results = run_seeds(config);
    AggregateSummary summary = aggregate(config, results);
    if (!config.output_dir.empty()) {
        fs::path dir(config.output_dir);
        fs::create_directories(dir);
        for (const RunResult& r : results)
            write_run_csv((dir / ("run_seed" + std::to_string(r.seed) + ".csv")).string(), r.run);
        write_summary_files(config, summary, dir);
        write_reference_curve(config, dir);
    }
    return summary;
}

double scaling_probe(const ExperimentConfig& config, long t1) {
    if (t1 < 1) throw std::invalid_argument("scaling_probe: t1 must be >= 1");
    ExperimentConfig small = config;
    small.horizon = t1;
    small.output_dir.clear();
    ExperimentConfig large = config;
    large.horizon = 4 * t1;
    large.output_dir.clear();
    auto mean_final = [](const std::vector<RunResult>& results) {
        double sum = 0.0;
        for (const RunResult& r : results) sum += cumulative_regret(r.run.trace, r.run.trace.length());
        return sum / static_cast<double>(results.size());
    };
    double at_t1 = mean_final(run_seeds(small));
    double at_4t1 = mean_final(run_seeds(large));
    return at_4t1 / at_t1;
}

std::vector<double> alpha_sweep(const ExperimentConfig& config, std::span<const double> alphas) {
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
        if (!(alphas[i] < alphas[i + 1]))
            throw std::invalid_argument("alpha_sweep: alphas must be strictly increasing");
    std::vector<double> mean_baseline;
    mean_baseline.reserve(alphas.size());
    for (double a : alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("alpha_sweep: alphas must be positive");
        ExperimentConfig cfg = config;
        cfg.baseline.alpha = a;
        cfg.output_dir.clear();
        std::vector<RunResult> results = run_seeds(cfg);
        double total = 0.0;
        for (const RunResult& r : results) total += static_cast<double>(r.run.baseline_plays);
        mean_baseline.push_back(total / static_cast<double>(results.size()));
    }
    return mean_baseline;
}

}  // namespace conex
