#pragma once

#include "conex/agents.hpp"
#include "conex/environments.hpp"

namespace conex {

// Uniform arm choice with a trivial lambda = 0. Diagnostic control: its regret
// grows linearly, which the scaling probe must be able to tell apart from the
// confidence-bound agents.
class UniformRandomAgent : public Agent {
public:
    explicit UniformRandomAgent(const MabInstance& env) : env_(env) {}

    Proposal propose(Rng& rng) override {
        int arm = 1 + rng.uniform_int(env_.num_arms());
        return {arm, "arm:" + std::to_string(arm), 0.0};
    }
    double play(const Proposal& proposal, Rng& rng) override {
        return pull(env_, proposal.key, rng);
    }
    double true_value(const Proposal& proposal) const override {
        return true_policy_value(env_, proposal.key);
    }
    double current_lcb(const Proposal&) const override { return 0.0; }

private:
    const MabInstance& env_;
};

}  // namespace conex
