#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conex {

// Absolute tolerance used when deciding whether the running constraint is
// violated; absorbs floating-point summation error over O(T) terms.
inline constexpr double kSlackTol = 1e-9;

// Baseline policy description: the level alpha of performance the agent may
// sacrifice, the known baseline value v0, and (only when a budget-first
// schedule is used) the baseline's sub-optimality gap delta0.
struct BaselineSpec {
    double alpha = 0.1;
    double v0 = 0.0;
    std::optional<double> delta0;

    void validate() const;  // throws std::invalid_argument on out-of-range fields
};

// One round of a run. true_value is the exact expected value of the policy
// played that round, taken from the environment oracle; realized_reward is
// the sampled return and is logged for completeness only.
struct RoundRecord {
    int t = 0;
    std::string policy_id;
    bool is_baseline = false;
    double realized_reward = 0.0;
    double true_value = 0.0;
    std::optional<double> lcb_at_play;  // lambda recorded when a candidate policy was played
};

struct RunTrace {
    std::vector<RoundRecord> records;  // indexed 1..T, in order
    double v_star = 0.0;               // optimal value from the environment oracle
    BaselineSpec baseline;
    std::uint64_t seed = 0;

    int length() const { return static_cast<int>(records.size()); }
    void validate() const;  // contiguous indices, baseline rounds at v0, v_star dominance
};

// Sum over rounds 1..t of (v_star - true_value). t = 0 is the empty prefix.
double cumulative_regret(const RunTrace& trace, int t);

// Sum over rounds 1..t of true_value minus (1 - alpha) * t * v0. The run is
// conservative at t iff this is >= 0.
double constraint_slack(const RunTrace& trace, int t);

// Every round index whose slack is below -kSlackTol. Empty means the run is
// conservative throughout.
std::vector<int> constraint_violations(const RunTrace& trace);

}  // namespace conex
