#include "conex/environments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace conex {

namespace {

constexpr double kProbTol = 1e-12;   // per-entry slack on probabilities
constexpr double kProbSumTol = 1e-9; // slack on a full distribution's sum

void check_policy_shape(const TabularPolicy& policy, int horizon, int num_states,
                        int num_actions) {
    if (static_cast<int>(policy.size()) != horizon)
        throw std::invalid_argument("policy: expected " + std::to_string(horizon) +
                                    " stages, got " + std::to_string(policy.size()));
    for (int h = 0; h < horizon; ++h) {
        if (static_cast<int>(policy[h].size()) != num_states)
            throw std::invalid_argument("policy: stage " + std::to_string(h) +
                                        " is not defined for every state");
        for (int s = 0; s < num_states; ++s) {
            int a = policy[h][s];
            if (a < 0 || a >= num_actions)
                throw std::invalid_argument("policy: action " + std::to_string(a) +
                                            " out of range at stage " + std::to_string(h));
        }
    }
}

double draw_reward(double mean, double r_max, RewardDraw mode, Rng& rng) {
    switch (mode) {
        case RewardDraw::deterministic:
            return mean;
        case RewardDraw::bernoulli:
            return rng.uniform01() < mean / r_max ? r_max : 0.0;
    }
    return mean;
}

}  // namespace

double sample_noise(NoiseKind kind, Rng& rng) {
    switch (kind) {
        case NoiseKind::zero:
            return 0.0;
        case NoiseKind::gaussian:
            return rng.gaussian();
        case NoiseKind::uniform:
            return rng.uniform(-1.0, 1.0);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Multi-armed bandit
// ---------------------------------------------------------------------------

void MabInstance::validate() const {
    if (means.empty()) throw std::invalid_argument("mab: needs at least one non-baseline arm");
    for (double m : means)
        if (!(m >= 0.0 && m <= 1.0))
            throw std::invalid_argument("mab: arm mean " + std::to_string(m) + " outside [0, 1]");
    if (!(baseline_mean >= 0.0 && baseline_mean <= 1.0))
        throw std::invalid_argument("mab: baseline mean outside [0, 1]");
}

double pull(const MabInstance& env, int arm, Rng& rng) {
    if (arm < 0 || arm > env.num_arms())
        throw std::invalid_argument("mab: arm " + std::to_string(arm) + " out of range");
    if (arm == 0) return env.baseline_mean;  // deterministic baseline arm
    return env.means[arm - 1] + sample_noise(env.noise, rng);
}

double true_policy_value(const MabInstance& env, int arm) {
    if (arm < 0 || arm > env.num_arms())
        throw std::invalid_argument("mab: arm " + std::to_string(arm) + " out of range");
    return arm == 0 ? env.baseline_mean : env.means[arm - 1];
}

double optimal_value(const MabInstance& env) {
    double best = env.baseline_mean;
    for (double m : env.means) best = std::max(best, m);
    return best;
}

// ---------------------------------------------------------------------------
// Linear bandit
// ---------------------------------------------------------------------------

void LinearBanditInstance::validate() const {
    if (actions.empty()) throw std::invalid_argument("linear_bandit: empty action list");
    if (theta_star.norm() > b_norm + kProbTol)
        throw std::invalid_argument("linear_bandit: ||theta_star|| exceeds b_norm");
    for (const auto& a : actions) {
        if (a.size() != theta_star.size())
            throw std::invalid_argument("linear_bandit: action dimension mismatch");
        if (a.norm() > d_norm + kProbTol)
            throw std::invalid_argument("linear_bandit: action norm exceeds d_norm");
        double r = theta_star.dot(a);
        if (r < -kProbTol || r > 1.0 + kProbTol)
            throw std::invalid_argument("linear_bandit: expected reward " + std::to_string(r) +
                                        " outside [0, 1]");
    }
    if (!(baseline_action_reward >= 0.0 && baseline_action_reward <= 1.0))
        throw std::invalid_argument("linear_bandit: baseline reward outside [0, 1]");
}

double pull(const LinearBanditInstance& env, int action, Rng& rng) {
    if (action < 0 || action >= env.num_actions())
        throw std::invalid_argument("linear_bandit: action " + std::to_string(action) +
                                    " out of range");
    return env.theta_star.dot(env.actions[action]) + sample_noise(env.noise, rng);
}

double true_policy_value(const LinearBanditInstance& env, int action) {
    if (action < 0 || action >= env.num_actions())
        throw std::invalid_argument("linear_bandit: action " + std::to_string(action) +
                                    " out of range");
    return env.theta_star.dot(env.actions[action]);
}

double optimal_value(const LinearBanditInstance& env) {
    double best = env.baseline_action_reward;
    for (const auto& a : env.actions) best = std::max(best, env.theta_star.dot(a));
    return best;
}

// ---------------------------------------------------------------------------
// Tabular MDP
// ---------------------------------------------------------------------------

void TabularMdpInstance::validate() const {
    if (num_states <= 0 || num_actions <= 0 || horizon <= 0)
        throw std::invalid_argument("tabular_mdp: sizes must be positive");
    if (initial_state < 0 || initial_state >= num_states)
        throw std::invalid_argument("tabular_mdp: initial state out of range");
    if (!(r_max > 0.0)) throw std::invalid_argument("tabular_mdp: r_max must be positive");
    std::size_t want_p = static_cast<std::size_t>(horizon) * num_states * num_actions * num_states;
    std::size_t want_r = static_cast<std::size_t>(horizon) * num_states * num_actions;
    if (transitions.size() != want_p || rewards.size() != want_r)
        throw std::invalid_argument("tabular_mdp: table sizes inconsistent with (S, A, H)");
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s)
            for (int a = 0; a < num_actions; ++a) {
                double sum = 0.0;
                for (int s2 = 0; s2 < num_states; ++s2) {
                    double q = p(h, s, a, s2);
                    if (q < -kProbTol)
                        throw std::invalid_argument("tabular_mdp: negative transition probability");
                    sum += q;
                }
                if (std::abs(sum - 1.0) > kProbTol * std::max(1, num_states))
                    throw std::invalid_argument("tabular_mdp: transition row does not sum to 1");
                double rew = r(h, s, a);
                if (rew < 0.0 || rew > r_max)
                    throw std::invalid_argument("tabular_mdp: reward outside [0, r_max]");
            }
}

Episode run_episode(const TabularMdpInstance& env, const TabularPolicy& policy, Rng& rng) {
    check_policy_shape(policy, env.horizon, env.num_states, env.num_actions);
    Episode ep;
    ep.steps.reserve(env.horizon);
    int s = env.initial_state;
    for (int h = 0; h < env.horizon; ++h) {
        int a = policy[h][s];
        double reward = draw_reward(env.r(h, s, a), env.r_max, env.reward_draw, rng);
        ep.steps.push_back({s, a, reward});
        ep.total_reward += reward;
        std::span<const double> row(&env.transitions[((static_cast<std::size_t>(h) * env.num_states + s) *
                                                      env.num_actions + a) * env.num_states],
                                    static_cast<std::size_t>(env.num_states));
        s = rng.categorical(row);
    }
    ep.final_state = s;
    return ep;
}

double true_policy_value(const TabularMdpInstance& env, const TabularPolicy& policy) {
    check_policy_shape(policy, env.horizon, env.num_states, env.num_actions);
    std::vector<double> value(env.num_states, 0.0);
    std::vector<double> next(env.num_states, 0.0);
    for (int h = env.horizon - 1; h >= 0; --h) {
        for (int s = 0; s < env.num_states; ++s) {
            int a = policy[h][s];
            double q = env.r(h, s, a);
            for (int s2 = 0; s2 < env.num_states; ++s2) q += env.p(h, s, a, s2) * next[s2];
            value[s] = q;
        }
        next = value;
    }
    return value[env.initial_state];
}

namespace {

// Backward induction; returns V_1(s_1) and fills the greedy policy when asked.
double tabular_optimal(const TabularMdpInstance& env, TabularPolicy* greedy) {
    std::vector<double> value(env.num_states, 0.0);
    std::vector<double> next(env.num_states, 0.0);
    if (greedy) greedy->assign(env.horizon, std::vector<int>(env.num_states, 0));
    for (int h = env.horizon - 1; h >= 0; --h) {
        for (int s = 0; s < env.num_states; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < env.num_actions; ++a) {
                double q = env.r(h, s, a);
                for (int s2 = 0; s2 < env.num_states; ++s2) q += env.p(h, s, a, s2) * next[s2];
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            value[s] = best;
            if (greedy) (*greedy)[h][s] = best_a;
        }
        next = value;
    }
    return value[env.initial_state];
}

}  // namespace

double optimal_value(const TabularMdpInstance& env) { return tabular_optimal(env, nullptr); }

TabularPolicy optimal_policy(const TabularMdpInstance& env) {
    TabularPolicy greedy;
    tabular_optimal(env, &greedy);
    return greedy;
}

// ---------------------------------------------------------------------------
// Low-rank MDP
// ---------------------------------------------------------------------------

void LowRankMdpInstance::validate() const {
    if (dim <= 0 || num_states <= 0 || num_actions <= 0 || horizon <= 0)
        throw std::invalid_argument("low_rank_mdp: sizes must be positive");
    if (initial_state < 0 || initial_state >= num_states)
        throw std::invalid_argument("low_rank_mdp: initial state out of range");
    if (static_cast<int>(features.size()) != num_states * num_actions)
        throw std::invalid_argument("low_rank_mdp: feature table size mismatch");
    if (static_cast<int>(measures.size()) != horizon || static_cast<int>(theta.size()) != horizon)
        throw std::invalid_argument("low_rank_mdp: stage table size mismatch");
    const double sqrt_d = std::sqrt(static_cast<double>(dim));
    for (const auto& f : features) {
        if (f.size() != dim) throw std::invalid_argument("low_rank_mdp: feature dimension mismatch");
        if (f.norm() > 1.0 + kProbTol)
            throw std::invalid_argument("low_rank_mdp: feature norm exceeds 1");
    }
    for (int h = 0; h < horizon; ++h) {
        if (measures[h].rows() != dim || measures[h].cols() != num_states)
            throw std::invalid_argument("low_rank_mdp: measure shape mismatch");
        if (theta[h].size() != dim)
            throw std::invalid_argument("low_rank_mdp: theta dimension mismatch");
        if (measures[h].rowwise().sum().norm() > sqrt_d + kProbSumTol)
            throw std::invalid_argument("low_rank_mdp: ||mu_h(S)|| exceeds sqrt(d)");
        if (theta[h].norm() > sqrt_d + kProbSumTol)
            throw std::invalid_argument("low_rank_mdp: ||theta_h|| exceeds sqrt(d)");
    }
    // induced kernels must be genuine distributions and rewards must fit [0, 1]
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s)
            for (int a = 0; a < num_actions; ++a) {
                Eigen::VectorXd row = measures[h].transpose() * phi(s, a);
                double sum = 0.0;
                for (int s2 = 0; s2 < num_states; ++s2) {
                    if (row[s2] < -kProbTol)
                        throw std::invalid_argument("low_rank_mdp: induced kernel has negative mass");
                    sum += row[s2];
                }
                if (std::abs(sum - 1.0) > kProbSumTol)
                    throw std::invalid_argument("low_rank_mdp: induced kernel does not sum to 1");
                double rew = reward_mean(h, s, a);
                if (rew < -kProbTol || rew > 1.0 + kProbTol)
                    throw std::invalid_argument("low_rank_mdp: induced reward outside [0, 1]");
            }
}

TabularMdpInstance induced_tabular(const LowRankMdpInstance& env) {
    TabularMdpInstance tab;
    tab.num_states = env.num_states;
    tab.num_actions = env.num_actions;
    tab.horizon = env.horizon;
    tab.r_max = 1.0;
    tab.initial_state = env.initial_state;
    tab.reward_draw = env.reward_draw;
    tab.transitions.assign(static_cast<std::size_t>(env.horizon) * env.num_states *
                               env.num_actions * env.num_states,
                           0.0);
    tab.rewards.assign(static_cast<std::size_t>(env.horizon) * env.num_states * env.num_actions,
                       0.0);
    for (int h = 0; h < env.horizon; ++h)
        for (int s = 0; s < env.num_states; ++s)
            for (int a = 0; a < env.num_actions; ++a) {
                Eigen::VectorXd row = env.measures[h].transpose() * env.phi(s, a);
                for (int s2 = 0; s2 < env.num_states; ++s2)
                    tab.p(h, s, a, s2) = std::max(0.0, row[s2]);  // clamp fp dust
                tab.r(h, s, a) = std::clamp(env.reward_mean(h, s, a), 0.0, 1.0);
            }
    return tab;
}

Episode run_episode(const LowRankMdpInstance& env, const TabularPolicy& policy, Rng& rng) {
    check_policy_shape(policy, env.horizon, env.num_states, env.num_actions);
    Episode ep;
    ep.steps.reserve(env.horizon);
    int s = env.initial_state;
    std::vector<double> row(env.num_states);
    for (int h = 0; h < env.horizon; ++h) {
        int a = policy[h][s];
        double reward = draw_reward(std::clamp(env.reward_mean(h, s, a), 0.0, 1.0), 1.0,
                                    env.reward_draw, rng);
        ep.steps.push_back({s, a, reward});
        ep.total_reward += reward;
        Eigen::VectorXd probs = env.measures[h].transpose() * env.phi(s, a);
        for (int s2 = 0; s2 < env.num_states; ++s2) row[s2] = std::max(0.0, probs[s2]);
        s = rng.categorical(row);
    }
    ep.final_state = s;
    return ep;
}

// Value oracles in the linear parameterization: Q_h = <phi, theta_h + mu_h V_{h+1}>.
// Deliberately a different arithmetic route than the induced-table DP, so the
// two views cross-check each other.
double true_policy_value(const LowRankMdpInstance& env, const TabularPolicy& policy) {
    check_policy_shape(policy, env.horizon, env.num_states, env.num_actions);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(env.num_states);
    Eigen::VectorXd value(env.num_states);
    for (int h = env.horizon - 1; h >= 0; --h) {
        Eigen::VectorXd w = env.theta[h] + env.measures[h] * next;
        for (int s = 0; s < env.num_states; ++s) value[s] = env.phi(s, policy[h][s]).dot(w);
        next = value;
    }
    return value[env.initial_state];
}

double optimal_value(const LowRankMdpInstance& env) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(env.num_states);
    Eigen::VectorXd value(env.num_states);
    for (int h = env.horizon - 1; h >= 0; --h) {
        Eigen::VectorXd w = env.theta[h] + env.measures[h] * next;
        for (int s = 0; s < env.num_states; ++s) {
            double best = env.phi(s, 0).dot(w);
            for (int a = 1; a < env.num_actions; ++a) best = std::max(best, env.phi(s, a).dot(w));
            value[s] = best;
        }
        next = value;
    }
    return value[env.initial_state];
}

// ---------------------------------------------------------------------------
// Shared surface
// ---------------------------------------------------------------------------

double baseline_episode(const BaselineSpec& baseline) { return baseline.v0; }

double optimal_value(const EnvironmentInstance& env) {
    return std::visit([](const auto& e) { return optimal_value(e); }, env);
}

void validate(const EnvironmentInstance& env) {
    std::visit([](const auto& e) { e.validate(); }, env);
}

std::string family_name(const EnvironmentInstance& env) {
    struct Namer {
        std::string operator()(const MabInstance&) const { return "mab"; }
        std::string operator()(const LinearBanditInstance&) const { return "linear_bandit"; }
        std::string operator()(const TabularMdpInstance&) const { return "tabular_mdp"; }
        std::string operator()(const LowRankMdpInstance&) const { return "low_rank_mdp"; }
    };
    return std::visit(Namer{}, env);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

MabInstance make_random_mab(int num_arms, std::uint64_t seed, NoiseKind noise) {
    if (num_arms < 1) throw std::invalid_argument("make_random_mab: need at least one arm");
    Rng rng(seed);
    MabInstance env;
    env.noise = noise;
    env.means.resize(num_arms);
    for (double& m : env.means) m = rng.uniform(0.05, 0.95);
    env.baseline_mean = rng.uniform(0.1, *std::max_element(env.means.begin(), env.means.end()));
    return env;
}

LinearBanditInstance make_random_linear_bandit(int dim, int num_actions, std::uint64_t seed,
                                               NoiseKind noise) {
    if (dim < 1 || num_actions < 1)
        throw std::invalid_argument("make_random_linear_bandit: sizes must be positive");
    Rng rng(seed);
    LinearBanditInstance env;
    env.noise = noise;
    env.b_norm = 1.0;
    env.d_norm = 1.0;
    Eigen::VectorXd u(dim);
    for (int i = 0; i < dim; ++i) u[i] = rng.gaussian();
    env.theta_star = 0.9 * u / u.norm();
    env.actions.reserve(num_actions);
    double best = 0.0;
    for (int k = 0; k < num_actions; ++k) {
        Eigen::VectorXd a(dim);
        for (int i = 0; i < dim; ++i) a[i] = rng.gaussian();
        a *= std::pow(rng.uniform01(), 1.0 / dim) / a.norm();  // uniform in the unit ball
        if (env.theta_star.dot(a) < 0.0) a = -a;               // keep rewards in [0, 0.9]
        best = std::max(best, env.theta_star.dot(a));
        env.actions.push_back(std::move(a));
    }
    env.baseline_action_reward = 0.5 * best;
    return env;
}

TabularMdpInstance make_random_tabular(int num_states, int num_actions, int horizon,
                                       std::uint64_t seed, bool deterministic, RewardDraw draw) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("make_random_tabular: sizes must be positive");
    Rng rng(seed);
    TabularMdpInstance env;
    env.num_states = num_states;
    env.num_actions = num_actions;
    env.horizon = horizon;
    env.r_max = 1.0;
    env.initial_state = 0;
    env.reward_draw = deterministic ? RewardDraw::deterministic : draw;
    env.transitions.assign(
        static_cast<std::size_t>(horizon) * num_states * num_actions * num_states, 0.0);
    env.rewards.assign(static_cast<std::size_t>(horizon) * num_states * num_actions, 0.0);
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s)
            for (int a = 0; a < num_actions; ++a) {
                env.r(h, s, a) = rng.uniform(0.0, 1.0);
                if (deterministic) {
                    env.p(h, s, a, rng.uniform_int(num_states)) = 1.0;
                } else {
                    double sum = 0.0;
                    for (int s2 = 0; s2 < num_states; ++s2) {
                        double e = -std::log(1.0 - rng.uniform01());
                        env.p(h, s, a, s2) = e;
                        sum += e;
                    }
                    for (int s2 = 0; s2 < num_states; ++s2) env.p(h, s, a, s2) /= sum;
                }
            }
    return env;
}

LowRankMdpInstance make_random_low_rank(int dim, int num_states, int num_actions, int horizon,
                                        std::uint64_t seed, RewardDraw draw) {
    if (dim < 1 || num_states < 1 || num_actions < 1 || horizon < 1)
        throw std::invalid_argument("make_random_low_rank: sizes must be positive");
    Rng rng(seed);
    LowRankMdpInstance env;
    env.dim = dim;
    env.num_states = num_states;
    env.num_actions = num_actions;
    env.horizon = horizon;
    env.initial_state = 0;
    env.reward_draw = draw;
    auto simplex_point = [&rng](int n) {
        Eigen::VectorXd v(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = -std::log(1.0 - rng.uniform01());
            sum += v[i];
        }
        return Eigen::VectorXd(v / sum);
    };
    env.features.reserve(static_cast<std::size_t>(num_states) * num_actions);
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < num_actions; ++a) env.features.push_back(simplex_point(dim));
    env.measures.reserve(horizon);
    env.theta.reserve(horizon);
    for (int h = 0; h < horizon; ++h) {
        Eigen::MatrixXd mu(dim, num_states);
        for (int i = 0; i < dim; ++i) mu.row(i) = simplex_point(num_states).transpose();
        env.measures.push_back(std::move(mu));
        Eigen::VectorXd th(dim);
        for (int i = 0; i < dim; ++i) th[i] = rng.uniform(0.0, 1.0);
        env.theta.push_back(std::move(th));
    }
    return env;
}

}  // namespace conex
