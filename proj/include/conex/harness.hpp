#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conex/config.hpp"
#include "conex/runner.hpp"

namespace conex {

struct RunResult {
    std::uint64_t seed = 0;
    ConservativeRun run;
};

// Executes one run per seed, in parallel, agents built fresh per run.
// Results come back in seed-list order.
std::vector<RunResult> run_seeds(const ExperimentConfig& config);

struct AggregateSummary {
    long horizon = 0;
    double v_star = 0.0;
    std::vector<std::uint64_t> seeds;
    // per-round statistics across runs
    std::vector<double> regret_mean, regret_q10, regret_q50, regret_q90;
    std::vector<double> slack_mean, slack_q10, slack_q50, slack_q90;
    // per-run statistics, in seed order
    std::vector<double> final_regret;
    std::vector<long> baseline_plays;
    std::vector<int> violation_counts;
    std::vector<int> first_violation;  // 0 when the run is conservative throughout
    int violating_runs = 0;
};

AggregateSummary aggregate(const ExperimentConfig& config, const std::vector<RunResult>& results);

// run_seeds + aggregate; when config.output_dir is set, also writes one CSV
// per seed, the round/run summary CSVs, the resolved config, and (when
// requested) the reference rate overlay with its metadata.
AggregateSummary run_experiment(const ExperimentConfig& config);

// Mean final regret at horizon 4*t1 divided by mean final regret at t1.
double scaling_probe(const ExperimentConfig& config, long t1);

// Mean baseline-play count per conservative level, same seeds throughout.
std::vector<double> alpha_sweep(const ExperimentConfig& config, std::span<const double> alphas);

}  // namespace conex
