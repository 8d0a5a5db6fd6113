#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "conex/rng.hpp"
#include "conex/trace.hpp"

namespace conex {

// ---------------------------------------------------------------------------
// Noise models
// ---------------------------------------------------------------------------

// Additive reward noise for the bandit families. All three laws are
// 1-sub-Gaussian: zero (point mass), standard Gaussian, centered uniform on
// [-1, 1].
enum class NoiseKind { zero, gaussian, uniform };

double sample_noise(NoiseKind kind, Rng& rng);

// Reward draw for the MDP families; both keep support inside [0, r_max].
// deterministic: the mean itself. bernoulli: r_max with probability
// mean / r_max, else 0.
enum class RewardDraw { deterministic, bernoulli };

// ---------------------------------------------------------------------------
// Multi-armed bandit
// ---------------------------------------------------------------------------

// Arms are indexed 0..K. Arm 0 is the baseline arm and pays baseline_mean
// exactly on every pull; arms 1..K pay means[i-1] plus noise.
struct MabInstance {
    std::vector<double> means;  // arms 1..K
    double baseline_mean = 0.0;
    NoiseKind noise = NoiseKind::gaussian;

    int num_arms() const { return static_cast<int>(means.size()); }
    void validate() const;
};

double pull(const MabInstance& env, int arm, Rng& rng);
double true_policy_value(const MabInstance& env, int arm);
double optimal_value(const MabInstance& env);

// ---------------------------------------------------------------------------
// Linear bandit
// ---------------------------------------------------------------------------

// Finite action list; playing action a yields <theta_star, phi_a> plus noise.
// The baseline action is outside the list: it pays baseline_action_reward
// deterministically and reveals nothing about theta_star.
struct LinearBanditInstance {
    Eigen::VectorXd theta_star;
    std::vector<Eigen::VectorXd> actions;
    double baseline_action_reward = 0.0;
    double b_norm = 1.0;  // bound on ||theta_star||_2
    double d_norm = 1.0;  // bound on ||phi_a||_2
    NoiseKind noise = NoiseKind::gaussian;

    int dim() const { return static_cast<int>(theta_star.size()); }
    int num_actions() const { return static_cast<int>(actions.size()); }
    void validate() const;
};

double pull(const LinearBanditInstance& env, int action, Rng& rng);
double true_policy_value(const LinearBanditInstance& env, int action);
double optimal_value(const LinearBanditInstance& env);

// ---------------------------------------------------------------------------
// Tabular MDP (finite horizon, time-inhomogeneous)
// ---------------------------------------------------------------------------

// Deterministic stage-indexed policy: policy[h][s] is the action taken in
// state s at stage h (0-based stages 0..H-1).
using TabularPolicy = std::vector<std::vector<int>>;

struct EpisodeStep {
    int state = 0;
    int action = 0;
    double reward = 0.0;
};

struct Episode {
    std::vector<EpisodeStep> steps;  // exactly H entries
    int final_state = 0;             // state reached after the last step
    double total_reward = 0.0;
};

struct TabularMdpInstance {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    double r_max = 1.0;
    int initial_state = 0;
    RewardDraw reward_draw = RewardDraw::deterministic;
    std::vector<double> transitions;  // [h][s][a][s'], row-major
    std::vector<double> rewards;      // [h][s][a]

    double p(int h, int s, int a, int s2) const {
        return transitions[((static_cast<std::size_t>(h) * num_states + s) * num_actions + a) *
                               num_states +
                           s2];
    }
    double& p(int h, int s, int a, int s2) {
        return transitions[((static_cast<std::size_t>(h) * num_states + s) * num_actions + a) *
                               num_states +
                           s2];
    }
    double r(int h, int s, int a) const {
        return rewards[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
    }
    double& r(int h, int s, int a) {
        return rewards[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
    }
    void validate() const;
};

Episode run_episode(const TabularMdpInstance& env, const TabularPolicy& policy, Rng& rng);
double true_policy_value(const TabularMdpInstance& env, const TabularPolicy& policy);
double optimal_value(const TabularMdpInstance& env);
TabularPolicy optimal_policy(const TabularMdpInstance& env);

// ---------------------------------------------------------------------------
// Low-rank MDP over a finite simulation state set
// ---------------------------------------------------------------------------

// Transitions and rewards are linear in a known d-dimensional feature map:
// P_h(.|s,a) = <phi(s,a), mu_h(.)> and r_h(s,a) = <phi(s,a), theta_h>.
// States are kept finite so exact value oracles exist.
struct LowRankMdpInstance {
    int dim = 0;
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    int initial_state = 0;
    RewardDraw reward_draw = RewardDraw::deterministic;
    std::vector<Eigen::VectorXd> features;  // [s * A + a], each of size dim
    std::vector<Eigen::MatrixXd> measures;  // per stage: dim x num_states
    std::vector<Eigen::VectorXd> theta;     // per stage: dim

    const Eigen::VectorXd& phi(int s, int a) const {
        return features[static_cast<std::size_t>(s) * num_actions + a];
    }
    double reward_mean(int h, int s, int a) const { return phi(s, a).dot(theta[h]); }
    void validate() const;
};

// Materializes the induced transition/reward tables; the result is a valid
// TabularMdpInstance on the same state set.
TabularMdpInstance induced_tabular(const LowRankMdpInstance& env);

Episode run_episode(const LowRankMdpInstance& env, const TabularPolicy& policy, Rng& rng);
double true_policy_value(const LowRankMdpInstance& env, const TabularPolicy& policy);
double optimal_value(const LowRankMdpInstance& env);

// ---------------------------------------------------------------------------
// Shared surface
// ---------------------------------------------------------------------------

using EnvironmentInstance =
    std::variant<MabInstance, LinearBanditInstance, TabularMdpInstance, LowRankMdpInstance>;

// Playing the baseline yields v0 exactly and produces no observation the
// agent could learn from, in any environment.
double baseline_episode(const BaselineSpec& baseline);

double optimal_value(const EnvironmentInstance& env);
void validate(const EnvironmentInstance& env);
std::string family_name(const EnvironmentInstance& env);

// ---------------------------------------------------------------------------
// Random instance generators
// ---------------------------------------------------------------------------

MabInstance make_random_mab(int num_arms, std::uint64_t seed,
                            NoiseKind noise = NoiseKind::gaussian);

LinearBanditInstance make_random_linear_bandit(int dim, int num_actions, std::uint64_t seed,
                                               NoiseKind noise = NoiseKind::gaussian);

// deterministic = true produces point-mass transitions (used for exact
// lower-bound checks).
TabularMdpInstance make_random_tabular(int num_states, int num_actions, int horizon,
                                       std::uint64_t seed, bool deterministic = false,
                                       RewardDraw draw = RewardDraw::bernoulli);

// Mixture construction: features on the probability simplex, stage measures
// rows are distributions over states, so every induced kernel is valid by
// construction.
LowRankMdpInstance make_random_low_rank(int dim, int num_states, int num_actions, int horizon,
                                        std::uint64_t seed,
                                        RewardDraw draw = RewardDraw::bernoulli);

}  // namespace conex
