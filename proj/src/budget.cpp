#include "conex/budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conex {

namespace {

double prefix_deficit_max(std::span<const double> values, const BaselineSpec& baseline) {
    const double floor = (1.0 - baseline.alpha) * baseline.v0;
    double sum = 0.0;
    double best = 0.0;
    bool first = true;
    for (double v : values) {
        sum += floor - v;
        if (first || sum > best) best = sum;
        first = false;
    }
    return values.empty() ? 0.0 : best;
}

}  // namespace

double budget(std::span<const double> values, const BaselineSpec& baseline) {
    return prefix_deficit_max(values, baseline);
}

double proxy_budget(std::span<const double> lambdas, const BaselineSpec& baseline) {
    return prefix_deficit_max(lambdas, baseline);
}

BudgetFirstSchedule budget_first_schedule(double rate_c, const BaselineSpec& baseline) {
    baseline.validate();
    const double earn_rate = baseline.alpha * baseline.v0;
    if (!(earn_rate > 0.0))
        throw std::invalid_argument(
            "budget_first: alpha * v0 must be positive, the baseline earns no budget");
    if (!baseline.delta0)
        throw std::invalid_argument(
            "budget_first: needs the baseline gap delta0; without it use the confidence-gated "
            "meta-algorithm (lcbce)");
    BudgetFirstSchedule schedule;
    schedule.reserve = rate_c * rate_c / (earn_rate + *baseline.delta0);
    schedule.prefix_rounds = static_cast<long>(std::ceil(schedule.reserve / earn_rate));
    return schedule;
}

BudgetState::BudgetState(const BaselineSpec& baseline)
    : alpha_(baseline.alpha), v0_(baseline.v0) {
    baseline.validate();
}

Decision BudgetState::decide(double candidate_lcb, LambdaMode mode,
                             const std::vector<double>* fresh_lambdas) {
    const double floor = (1.0 - alpha_) * v0_;
    double base_sum = deficit_sum_;
    double base_max = deficit_max_;
    if (mode == LambdaMode::fresh) {
        if (!fresh_lambdas || static_cast<long>(fresh_lambdas->size()) != candidate_count_)
            throw std::invalid_argument(
                "budget: fresh mode needs one re-evaluated lambda per played policy");
        base_sum = 0.0;
        base_max = 0.0;
        for (double lam : *fresh_lambdas) {
            base_sum += floor - lam;
            base_max = std::max(base_max, base_sum);
        }
    }
    const double candidate_deficit = base_sum + floor - candidate_lcb;
    const double required = std::max(base_max, candidate_deficit);

    if (required <= accumulated()) {
        candidate_count_ += 1;
        deficit_sum_ = candidate_deficit;
        deficit_max_ = std::max(base_max, candidate_deficit);
        lambda_cache_.push_back(candidate_lcb);
        return Decision::candidate;
    }
    baseline_count_ += 1;
    return Decision::baseline;
}

}  // namespace conex
