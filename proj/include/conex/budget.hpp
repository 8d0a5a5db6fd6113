#pragma once

#include <span>
#include <vector>

#include "conex/trace.hpp"

namespace conex {

// Worst prefix deficit of a sequence of policy values against the
// (1 - alpha) v0 floor: max over prefixes of sum((1 - alpha) v0 - V_l).
// An empty sequence needs no reserve, so its budget is 0.
double budget(std::span<const double> values, const BaselineSpec& baseline);

// The same prefix maximum with lower confidence values in place of true
// values. Dominates budget() whenever every lambda is a valid lower bound.
double proxy_budget(std::span<const double> lambdas, const BaselineSpec& baseline);

// Reserve and baseline-prefix length for the schedule-first meta-algorithm:
// reserve = C^2 / (alpha v0 + delta0), prefix = ceil(reserve / (alpha v0)).
struct BudgetFirstSchedule {
    double reserve = 0.0;
    long prefix_rounds = 0;
};

BudgetFirstSchedule budget_first_schedule(double rate_c, const BaselineSpec& baseline);

// Round t plays the baseline iff t <= prefix_rounds (closed boundary).
inline bool budget_first_plays_baseline(long t, const BudgetFirstSchedule& schedule) {
    return t <= schedule.prefix_rounds;
}

enum class LambdaMode { stale, fresh };
enum class Decision { baseline, candidate };

// Accumulated-budget ledger for the confidence-gated meta-algorithm. A
// candidate is played only when the worst prefix deficit of the played
// sequence extended by the candidate is covered by the budget earned from
// baseline plays, alpha * v0 * n0.
//
// stale mode keeps each policy's lambda as recorded when it was played (O(1)
// per round); fresh mode re-evaluates every past lambda under current data and
// rebuilds the prefix maximum.
class BudgetState {
public:
    explicit BudgetState(const BaselineSpec& baseline);

    Decision decide(double candidate_lcb, LambdaMode mode,
                    const std::vector<double>* fresh_lambdas = nullptr);

    double accumulated() const { return alpha_ * v0_ * static_cast<double>(baseline_count_); }
    long baseline_plays() const { return baseline_count_; }
    long candidate_plays() const { return candidate_count_; }
    double deficit_sum() const { return deficit_sum_; }
    double deficit_max() const { return deficit_max_; }
    const std::vector<double>& lambda_cache() const { return lambda_cache_; }

private:
    double alpha_;
    double v0_;
    long baseline_count_ = 0;
    long candidate_count_ = 0;
    double deficit_sum_ = 0.0;  // running sum of ((1 - alpha) v0 - lambda) over plays
    double deficit_max_ = 0.0;  // max over prefixes of deficit_sum_ (empty prefix = 0)
    std::vector<double> lambda_cache_;
};

}  // namespace conex
