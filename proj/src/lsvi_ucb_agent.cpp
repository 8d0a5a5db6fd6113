#include "conex/lsvi_ucb_agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conex {

LsviUcbAgent::LsviUcbAgent(const LowRankMdpInstance& env, double delta, long total_episodes,
                           double lambda_reg, double beta_scale,
                           std::optional<double> beta_override)
    : env_(env),
      delta_(delta),
      lambda_reg_(lambda_reg),
      beta_scale_(beta_scale),
      beta_override_(beta_override),
      total_episodes_(std::max<long>(total_episodes, 1)) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("lsvi_ucb: delta must lie in (0, 1)");
    if (lambda_reg < 0.0) throw std::invalid_argument("lsvi_ucb: ridge weight must be nonnegative");
    const int d = env_.dim, H = env_.horizon, S = env_.num_states;
    gram_.assign(H, lambda_reg_ * Eigen::MatrixXd::Identity(d, d));
    reward_moment_.assign(H, Eigen::VectorXd::Zero(d));
    next_feature_sum_.assign(H, Eigen::MatrixXd::Zero(d, S));
}

double LsviUcbAgent::beta() const {
    if (beta_override_) return *beta_override_;
    double d = static_cast<double>(env_.dim);
    double h = static_cast<double>(env_.horizon);
    double t = static_cast<double>(total_episodes_);
    return beta_scale_ * d * h * std::sqrt(std::log(2.0 * d * t * h / delta_));
}

void LsviUcbAgent::observe(int h, int s, int a, double reward, int next_state) {
    const Eigen::VectorXd& phi = env_.phi(s, a);
    gram_[h].noalias() += phi * phi.transpose();
    reward_moment_[h].noalias() += phi * reward;
    next_feature_sum_[h].col(next_state) += phi;
    factor_ok_ = false;
    plan_ok_ = false;
}

void LsviUcbAgent::refresh_factorizations() const {
    if (factor_ok_) return;
    const int S = env_.num_states, A = env_.num_actions, H = env_.horizon;
    ldlt_.assign(H, Eigen::LDLT<Eigen::MatrixXd>());
    widths_.assign(H, std::vector<double>(static_cast<std::size_t>(S) * A, 0.0));
    for (int h = 0; h < H; ++h) {
        ldlt_[h].compute(gram_[h]);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                const Eigen::VectorXd& phi = env_.phi(s, a);
                double w2 = phi.dot(ldlt_[h].solve(phi));
                widths_[h][static_cast<std::size_t>(s) * A + a] = std::sqrt(std::max(0.0, w2));
            }
    }
    factor_ok_ = true;
}

const LsviPlan& LsviUcbAgent::plan() const {
    if (plan_ok_) return plan_;
    refresh_factorizations();
    const int S = env_.num_states, A = env_.num_actions, H = env_.horizon;
    const double b = beta();
    const double value_cap = H * 1.0;  // rewards live in [0, 1]
    plan_.policy.assign(H, std::vector<int>(S, 0));
    plan_.upper.assign(H + 1, std::vector<double>(S, 0.0));
    plan_.q_upper.assign(H, std::vector<double>(static_cast<std::size_t>(S) * A, 0.0));

    Eigen::VectorXd value_next = Eigen::VectorXd::Zero(S);
    for (int h = H - 1; h >= 0; --h) {
        Eigen::VectorXd moment = reward_moment_[h] + next_feature_sum_[h] * value_next;
        Eigen::VectorXd w = ldlt_[h].solve(moment);
        for (int s = 0; s < S; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                double raw = w.dot(env_.phi(s, a)) + b * widths_[h][static_cast<std::size_t>(s) * A + a];
                double q = std::clamp(raw, 0.0, value_cap);
                plan_.q_upper[h][static_cast<std::size_t>(s) * A + a] = q;
                if (q > best) {  // ties resolve to the lowest action
                    best = q;
                    best_a = a;
                }
            }
            plan_.upper[h][s] = best;
            plan_.policy[h][s] = best_a;
            value_next[s] = best;  // safe: row fully consumed before overwrite
        }
        // value_next now holds stage h values for the next iteration
    }
    plan_.upper_start = plan_.upper[0][env_.initial_state];

    std::vector<double> lower0 = lower_pass(plan_.policy);
    plan_.lower.assign(H + 1, std::vector<double>(S, 0.0));
    plan_.lower[0] = lower0;
    plan_.lower_start = lower0[env_.initial_state];
    plan_ok_ = true;
    return plan_;
}

std::vector<double> LsviUcbAgent::lower_pass(const TabularPolicy& policy) const {
    refresh_factorizations();
    const int S = env_.num_states, A = env_.num_actions, H = env_.horizon;
    const double b = beta();
    const double value_cap = H * 1.0;
    Eigen::VectorXd value_next = Eigen::VectorXd::Zero(S);
    std::vector<double> value(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        Eigen::VectorXd moment = reward_moment_[h] + next_feature_sum_[h] * value_next;
        Eigen::VectorXd w = ldlt_[h].solve(moment);
        for (int s = 0; s < S; ++s) {
            int a = policy[h][s];
            double raw = w.dot(env_.phi(s, a)) - b * widths_[h][static_cast<std::size_t>(s) * A + a];
            value[s] = std::clamp(raw, 0.0, value_cap);
        }
        for (int s = 0; s < S; ++s) value_next[s] = value[s];
    }
    return value;
}

Proposal LsviUcbAgent::propose(Rng&) {
    const LsviPlan& p = plan();
    int key = static_cast<int>(committed_.size());
    return {key, "pi:" + std::to_string(key + 1), p.lower_start};
}

const TabularPolicy& LsviUcbAgent::resolve(const Proposal& proposal) const {
    if (proposal.key == static_cast<int>(committed_.size())) return plan().policy;
    if (proposal.key < 0 || proposal.key > static_cast<int>(committed_.size()))
        throw std::logic_error("lsvi_ucb: proposal does not belong to this agent");
    return committed_[proposal.key];
}

double LsviUcbAgent::play(const Proposal& proposal, Rng& rng) {
    if (proposal.key != static_cast<int>(committed_.size()))
        throw std::logic_error("lsvi_ucb: only the pending proposal can be played");
    committed_.push_back(plan().policy);
    Episode ep = run_episode(env_, committed_.back(), rng);
    for (int h = 0; h < env_.horizon; ++h) {
        int next = h + 1 < env_.horizon ? ep.steps[h + 1].state : ep.final_state;
        observe(h, ep.steps[h].state, ep.steps[h].action, ep.steps[h].reward, next);
    }
    return ep.total_reward;
}

double LsviUcbAgent::true_value(const Proposal& proposal) const {
    return true_policy_value(env_, resolve(proposal));
}

double LsviUcbAgent::current_lcb(const Proposal& proposal) const {
    if (proposal.key == static_cast<int>(committed_.size())) return plan().lower_start;
    return lower_pass(committed_[proposal.key])[env_.initial_state];
}

}  // namespace conex
