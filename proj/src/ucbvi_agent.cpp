#include "conex/ucbvi_agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conex {

UcbviAgent::UcbviAgent(const TabularMdpInstance& env, double delta, long total_episodes,
                       BonusMode mode, double bonus_scale)
    : env_(env), delta_(delta), mode_(mode), bonus_scale_(bonus_scale) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("ucbvi: delta must lie in (0, 1)");
    if (bonus_scale < 0.0) throw std::invalid_argument("ucbvi: bonus scale must be nonnegative");
    double t = static_cast<double>(std::max<long>(total_episodes, 1));
    log_term_ = std::log(5.0 * env_.num_states * env_.num_actions * env_.horizon * t / delta_);
    std::size_t n_sa = static_cast<std::size_t>(env_.horizon) * env_.num_states * env_.num_actions;
    counts_.assign(n_sa, 0);
    trans_counts_.assign(n_sa * env_.num_states, 0);
    reward_sums_.assign(n_sa, 0.0);
}

double UcbviAgent::bonus_at(int h, int s, int a, const std::vector<double>& upper_next) const {
    long n = counts_[sa_index(h, s, a)];
    double hr = env_.horizon * env_.r_max;
    if (mode_ == BonusMode::hoeffding)
        return bonus_scale_ * hr * std::sqrt(log_term_ / (2.0 * static_cast<double>(n)));
    // Bernstein: variance of the next-stage optimistic values under the
    // empirical kernel, plus the usual lower-order correction.
    double mean = 0.0, mean_sq = 0.0;
    for (int s2 = 0; s2 < env_.num_states; ++s2) {
        double p = static_cast<double>(trans_counts_[sas_index(h, s, a, s2)]) /
                   static_cast<double>(n);
        mean += p * upper_next[s2];
        mean_sq += p * upper_next[s2] * upper_next[s2];
    }
    double var = std::max(0.0, mean_sq - mean * mean);
    return bonus_scale_ * (std::sqrt(2.0 * log_term_ * var / static_cast<double>(n)) +
                           7.0 * hr * log_term_ / (3.0 * static_cast<double>(n)));
}

double UcbviAgent::bonus(int h, int s, int a) const {
    if (counts_[sa_index(h, s, a)] < 1)
        throw std::logic_error("ucbvi: bonus undefined for an unvisited pair");
    return bonus_at(h, s, a, plan().upper[h + 1]);
}

const TabularPlan& UcbviAgent::plan() const {
    if (plan_ok_) return plan_;
    const int S = env_.num_states, A = env_.num_actions, H = env_.horizon;
    plan_.policy.assign(H, std::vector<int>(S, 0));
    plan_.upper.assign(H + 1, std::vector<double>(S, 0.0));
    plan_.q_upper.assign(H, std::vector<double>(static_cast<std::size_t>(S) * A, 0.0));

    // Optimistic pass with +b and the per-stage value ceiling.
    for (int h = H - 1; h >= 0; --h) {
        double ceiling = (H - h) * env_.r_max;
        for (int s = 0; s < S; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                long n = counts_[sa_index(h, s, a)];
                double q;
                if (n == 0) {
                    q = ceiling;
                } else {
                    q = reward_sums_[sa_index(h, s, a)] / static_cast<double>(n);
                    for (int s2 = 0; s2 < S; ++s2)
                        q += static_cast<double>(trans_counts_[sas_index(h, s, a, s2)]) /
                             static_cast<double>(n) * plan_.upper[h + 1][s2];
                    q += bonus_at(h, s, a, plan_.upper[h + 1]);
                    q = std::clamp(q, 0.0, ceiling);
                }
                plan_.q_upper[h][static_cast<std::size_t>(s) * A + a] = q;
                if (q > best) {  // ties resolve to the lowest action
                    best = q;
                    best_a = a;
                }
            }
            plan_.upper[h][s] = best;
            plan_.policy[h][s] = best_a;
        }
    }
    plan_.upper_start = plan_.upper[0][env_.initial_state];
    plan_ok_ = true;  // lower_pass below reads the cached optimistic values

    std::vector<double> lower0 = lower_pass(plan_.policy);
    plan_.lower.assign(H + 1, std::vector<double>(S, 0.0));
    plan_.lower[0] = lower0;
    plan_.lower_start = lower0[env_.initial_state];
    return plan_;
}

std::vector<double> UcbviAgent::lower_pass(const TabularPolicy& policy) const {
    const int S = env_.num_states, H = env_.horizon;
    std::vector<double> value(S, 0.0), next(S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        double ceiling = (H - h) * env_.r_max;
        for (int s = 0; s < S; ++s) {
            int a = policy[h][s];
            long n = counts_[sa_index(h, s, a)];
            if (n == 0) {
                value[s] = 0.0;
                continue;
            }
            double q = reward_sums_[sa_index(h, s, a)] / static_cast<double>(n);
            for (int s2 = 0; s2 < S; ++s2)
                q += static_cast<double>(trans_counts_[sas_index(h, s, a, s2)]) /
                     static_cast<double>(n) * next[s2];
            q -= bonus_at(h, s, a, plan_.upper[h + 1]);
            value[s] = std::clamp(q, 0.0, ceiling);
        }
        next = value;
    }
    return value;
}

void UcbviAgent::observe(int h, int s, int a, double reward, int next_state) {
    counts_[sa_index(h, s, a)] += 1;
    trans_counts_[sas_index(h, s, a, next_state)] += 1;
    reward_sums_[sa_index(h, s, a)] += reward;
    plan_ok_ = false;
}

Proposal UcbviAgent::propose(Rng&) {
    const TabularPlan& p = plan();
    int key = static_cast<int>(committed_.size());
    return {key, "pi:" + std::to_string(key + 1), p.lower_start};
}

const TabularPolicy& UcbviAgent::resolve(const Proposal& proposal) const {
    if (proposal.key == static_cast<int>(committed_.size())) return plan().policy;
    if (proposal.key < 0 || proposal.key > static_cast<int>(committed_.size()))
        throw std::logic_error("ucbvi: proposal does not belong to this agent");
    return committed_[proposal.key];
}

double UcbviAgent::play(const Proposal& proposal, Rng& rng) {
    if (proposal.key != static_cast<int>(committed_.size()))
        throw std::logic_error("ucbvi: only the pending proposal can be played");
    committed_.push_back(plan().policy);
    Episode ep = run_episode(env_, committed_.back(), rng);
    for (int h = 0; h < env_.horizon; ++h) {
        int next = h + 1 < env_.horizon ? ep.steps[h + 1].state : ep.final_state;
        observe(h, ep.steps[h].state, ep.steps[h].action, ep.steps[h].reward, next);
    }
    return ep.total_reward;
}

double UcbviAgent::true_value(const Proposal& proposal) const {
    return true_policy_value(env_, resolve(proposal));
}

double UcbviAgent::current_lcb(const Proposal& proposal) const {
    if (proposal.key == static_cast<int>(committed_.size())) return plan().lower_start;
    plan();  // the variance term reads the cached optimistic values
    return lower_pass(committed_[proposal.key])[env_.initial_state];
}

}  // namespace conex
