#pragma once

#include <vector>

#include "conex/agents.hpp"
#include "conex/environments.hpp"

namespace conex {

enum class BonusMode { bernstein, hoeffding };

// One planning result: the optimistic pass (values + greedy policy) and the
// pessimistic evaluation of that same greedy policy with the bonus sign
// flipped. Values are stage-indexed with an extra all-zero terminal row.
struct TabularPlan {
    TabularPolicy policy;
    std::vector<std::vector<double>> upper;    // [h][s]
    std::vector<std::vector<double>> lower;    // [h][s]
    std::vector<std::vector<double>> q_upper;  // [h][s * A + a]
    double upper_start = 0.0;
    double lower_start = 0.0;
};

// Optimistic value iteration on empirical tables with Bernstein or Hoeffding
// exploration bonuses. The lower confidence value for the proposed policy
// comes from a second backward pass that evaluates the optimistic greedy
// policy with -b (policy evaluation, not re-maximization), so lambda bounds
// the value of the policy actually played.
class UcbviAgent : public Agent {
public:
    UcbviAgent(const TabularMdpInstance& env, double delta, long total_episodes,
               BonusMode mode = BonusMode::bernstein, double bonus_scale = 1.0);

    const TabularPlan& plan() const;  // recomputed lazily when data changed

    // Exploration bonus at a visited pair; requires N_h(s,a) >= 1 and uses the
    // current plan's next-stage optimistic values for the variance term.
    double bonus(int h, int s, int a) const;

    // Feeds one observed transition (test and replay hook).
    void observe(int h, int s, int a, double reward, int next_state);

    Proposal propose(Rng& rng) override;
    double play(const Proposal& proposal, Rng& rng) override;
    double true_value(const Proposal& proposal) const override;
    double current_lcb(const Proposal& proposal) const override;

    long visit_count(int h, int s, int a) const { return counts_[sa_index(h, s, a)]; }
    long committed_policies() const { return static_cast<long>(committed_.size()); }

private:
    std::size_t sa_index(int h, int s, int a) const {
        return (static_cast<std::size_t>(h) * env_.num_states + s) * env_.num_actions + a;
    }
    std::size_t sas_index(int h, int s, int a, int s2) const {
        return sa_index(h, s, a) * env_.num_states + s2;
    }
    double bonus_at(int h, int s, int a, const std::vector<double>& upper_next) const;
    // Pessimistic policy evaluation under the current data; uses the cached
    // plan's optimistic values for the Bernstein variance term.
    std::vector<double> lower_pass(const TabularPolicy& policy) const;
    const TabularPolicy& resolve(const Proposal& proposal) const;

    const TabularMdpInstance& env_;
    double delta_;
    BonusMode mode_;
    double bonus_scale_;
    double log_term_;  // ln(5 S A H max(T,1) / delta)

    std::vector<long> counts_;        // [h][s][a]
    std::vector<long> trans_counts_;  // [h][s][a][s']
    std::vector<double> reward_sums_; // [h][s][a]

    std::vector<TabularPolicy> committed_;  // policies actually played, in order
    mutable TabularPlan plan_;
    mutable bool plan_ok_ = false;
};

}  // namespace conex
