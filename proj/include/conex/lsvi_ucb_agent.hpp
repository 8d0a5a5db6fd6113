#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "conex/agents.hpp"
#include "conex/environments.hpp"

namespace conex {

struct LsviPlan {
    TabularPolicy policy;
    std::vector<std::vector<double>> upper;    // [h][s], h = 0..H
    std::vector<std::vector<double>> lower;    // [h][s]
    std::vector<std::vector<double>> q_upper;  // [h][s * A + a]
    double upper_start = 0.0;
    double lower_start = 0.0;
};

// Least-squares value iteration with an optimistic bonus on the regression
// width. Each backward pass solves ridge regressions per stage against
// bootstrapped targets; the upper pass adds +beta ||phi||_{Lambda^-1} and is
// maximized over actions, the lower pass subtracts the bonus and evaluates the
// upper-pass greedy policy. The finite simulation state set keeps targets
// representable as per-state sums, so a round costs O(H (d^3 + S A d^2)).
class LsviUcbAgent : public Agent {
public:
    LsviUcbAgent(const LowRankMdpInstance& env, double delta, long total_episodes,
                 double lambda_reg = 1.0, double beta_scale = 1.0,
                 std::optional<double> beta_override = std::nullopt);

    double beta() const;
    const LsviPlan& plan() const;

    // Feeds one observed transition (test and replay hook).
    void observe(int h, int s, int a, double reward, int next_state);

    Proposal propose(Rng& rng) override;
    double play(const Proposal& proposal, Rng& rng) override;
    double true_value(const Proposal& proposal) const override;
    double current_lcb(const Proposal& proposal) const override;

    long committed_policies() const { return static_cast<long>(committed_.size()); }

private:
    // Pessimistic backward pass evaluating the given policy; fills values[h][s].
    std::vector<double> lower_pass(const TabularPolicy& policy) const;
    void refresh_factorizations() const;
    const TabularPolicy& resolve(const Proposal& proposal) const;

    const LowRankMdpInstance& env_;
    double delta_;
    double lambda_reg_;
    double beta_scale_;
    std::optional<double> beta_override_;
    long total_episodes_;

    std::vector<Eigen::MatrixXd> gram_;              // per stage: lambda I + sum phi phi^T
    std::vector<Eigen::VectorXd> reward_moment_;     // per stage: sum phi * r
    std::vector<Eigen::MatrixXd> next_feature_sum_;  // per stage: d x S, column s' sums phi

    std::vector<TabularPolicy> committed_;
    mutable std::vector<Eigen::LDLT<Eigen::MatrixXd>> ldlt_;
    mutable std::vector<std::vector<double>> widths_;  // [h][s * A]: ||phi||_{Lambda^-1}
    mutable bool factor_ok_ = false;
    mutable LsviPlan plan_;
    mutable bool plan_ok_ = false;
};

}  // namespace conex
