#include "conex/ucb_agent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace conex {

UcbAgent::UcbAgent(const MabInstance& env, double delta)
    : env_(env), delta_(delta), counts_(env.num_arms(), 0), sums_(env.num_arms(), 0.0) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("ucb: delta must lie in (0, 1)");
}

ArmIndices UcbAgent::arm_indices(int arm) const {
    long n = counts_[arm - 1];
    if (n == 0) return {std::numeric_limits<double>::infinity(), 0.0};
    double k = static_cast<double>(env_.num_arms());
    double psi = 2.0 * std::log(k * static_cast<double>(n) * n * n / delta_);
    double bonus = std::sqrt(psi / static_cast<double>(n));
    double mean = sums_[arm - 1] / static_cast<double>(n);
    return {mean + bonus, std::max(0.0, mean - bonus)};
}

std::vector<ArmIndices> UcbAgent::indices() const {
    std::vector<ArmIndices> out(env_.num_arms());
    for (int arm = 1; arm <= env_.num_arms(); ++arm) out[arm - 1] = arm_indices(arm);
    return out;
}

Proposal UcbAgent::propose(Rng&) {
    int best = 1;
    ArmIndices best_idx = arm_indices(1);
    for (int arm = 2; arm <= env_.num_arms(); ++arm) {
        ArmIndices idx = arm_indices(arm);
        if (idx.ucb > best_idx.ucb) {  // ties resolve to the lowest arm
            best = arm;
            best_idx = idx;
        }
    }
    return {best, "arm:" + std::to_string(best), best_idx.lcb};
}

double UcbAgent::play(const Proposal& proposal, Rng& rng) {
    double reward = pull(env_, proposal.key, rng);
    counts_[proposal.key - 1] += 1;
    sums_[proposal.key - 1] += reward;
    return reward;
}

double UcbAgent::true_value(const Proposal& proposal) const {
    return true_policy_value(env_, proposal.key);
}

double UcbAgent::current_lcb(const Proposal& proposal) const {
    return arm_indices(proposal.key).lcb;
}

}  // namespace conex
