#include "conex/linucb_agent.hpp"

#include <cmath>
#include <stdexcept>

namespace conex {

LinUcbAgent::LinUcbAgent(const LinearBanditInstance& env, double delta, double lambda_reg)
    : env_(env), delta_(delta), lambda_reg_(lambda_reg) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("linucb: delta must lie in (0, 1)");
    if (!(lambda_reg > 0.0))
        throw std::invalid_argument("linucb: ridge weight must be positive");
    const int d = env_.dim();
    gram_ = lambda_reg_ * Eigen::MatrixXd::Identity(d, d);
    moment_ = Eigen::VectorXd::Zero(d);
}

void LinUcbAgent::observe(const Eigen::VectorXd& phi, double reward) {
    gram_.noalias() += phi * phi.transpose();
    moment_.noalias() += phi * reward;
    updates_ += 1;
    cache_ok_ = false;
}

void LinUcbAgent::refresh_cache() const {
    if (cache_ok_) return;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram_);
    theta_cache_ = ldlt.solve(moment_);
    gram_inv_cache_ = ldlt.solve(Eigen::MatrixXd::Identity(env_.dim(), env_.dim()));
    cache_ok_ = true;
}

double LinUcbAgent::beta() const {
    const double d = static_cast<double>(env_.dim());
    const double t = static_cast<double>(updates_);
    double log_det_ratio =
        d * std::log((d * lambda_reg_ + t * env_.d_norm * env_.d_norm) / (d * lambda_reg_));
    return std::sqrt(lambda_reg_) * env_.b_norm +
           std::sqrt(2.0 * std::log(1.0 / delta_) + log_det_ratio);
}

Eigen::VectorXd LinUcbAgent::theta_hat() const {
    refresh_cache();
    return theta_cache_;
}

double LinUcbAgent::lcb_of(const Eigen::VectorXd& phi) const {
    refresh_cache();
    double width = std::sqrt(phi.dot(gram_inv_cache_ * phi));
    return std::max(0.0, theta_cache_.dot(phi) - beta() * width);
}

Proposal LinUcbAgent::propose(Rng&) {
    if (env_.num_actions() == 0) throw std::invalid_argument("linucb: empty action list");
    refresh_cache();
    const double b = beta();
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < env_.num_actions(); ++a) {
        const Eigen::VectorXd& phi = env_.actions[a];
        double score = theta_cache_.dot(phi) + b * std::sqrt(phi.dot(gram_inv_cache_ * phi));
        if (score > best_score) {  // ties resolve to the lowest action
            best_score = score;
            best = a;
        }
    }
    return {best, "act:" + std::to_string(best), lcb_of(env_.actions[best])};
}

double LinUcbAgent::play(const Proposal& proposal, Rng& rng) {
    double reward = pull(env_, proposal.key, rng);
    observe(env_.actions[proposal.key], reward);
    return reward;
}

double LinUcbAgent::true_value(const Proposal& proposal) const {
    return true_policy_value(env_, proposal.key);
}

double LinUcbAgent::current_lcb(const Proposal& proposal) const {
    return lcb_of(env_.actions[proposal.key]);
}

}  // namespace conex
