#pragma once

#include <vector>

#include "conex/agents.hpp"
#include "conex/environments.hpp"

namespace conex {

struct ArmIndices {
    double ucb = 0.0;
    double lcb = 0.0;
};

// UCB over the non-baseline arms with the matching lower confidence index:
// mean +/- sqrt(psi(N)/N), psi(s) = 2 ln(K s^3 / delta), lcb clipped at 0.
// An unpulled arm carries (+inf, 0).
class UcbAgent : public Agent {
public:
    UcbAgent(const MabInstance& env, double delta);

    std::vector<ArmIndices> indices() const;

    Proposal propose(Rng& rng) override;
    double play(const Proposal& proposal, Rng& rng) override;
    double true_value(const Proposal& proposal) const override;
    double current_lcb(const Proposal& proposal) const override;

    long pulls(int arm) const { return counts_[arm - 1]; }
    double empirical_mean(int arm) const { return sums_[arm - 1] / counts_[arm - 1]; }

private:
    ArmIndices arm_indices(int arm) const;

    const MabInstance& env_;
    double delta_;
    std::vector<long> counts_;  // per arm 1..K
    std::vector<double> sums_;
};

}  // namespace conex
