#pragma once

#include <Eigen/Dense>

#include "conex/agents.hpp"
#include "conex/environments.hpp"

namespace conex {

// Optimistic linear bandit agent on a ridge-regularized least-squares
// estimate. The confidence set is the standard self-normalized ellipsoid
// {theta : ||theta - theta_hat||_V <= beta}; the per-action optimistic score
// is <theta_hat, phi> + beta ||phi||_{V^-1} and the lower confidence value is
// the ellipsoid minimum <theta_hat, phi> - beta ||phi||_{V^-1}, clipped at 0.
class LinUcbAgent : public Agent {
public:
    LinUcbAgent(const LinearBanditInstance& env, double delta, double lambda_reg = 1.0);

    // Rank-one update with one observed (feature, reward) pair.
    void observe(const Eigen::VectorXd& phi, double reward);

    Proposal propose(Rng& rng) override;
    double play(const Proposal& proposal, Rng& rng) override;
    double true_value(const Proposal& proposal) const override;
    double current_lcb(const Proposal& proposal) const override;

    double beta() const;  // current confidence radius
    Eigen::VectorXd theta_hat() const;
    const Eigen::MatrixXd& gram() const { return gram_; }
    long updates() const { return updates_; }

private:
    void refresh_cache() const;
    double lcb_of(const Eigen::VectorXd& phi) const;

    const LinearBanditInstance& env_;
    double delta_;
    double lambda_reg_;
    Eigen::MatrixXd gram_;
    Eigen::VectorXd moment_;
    long updates_ = 0;

    mutable bool cache_ok_ = false;
    mutable Eigen::VectorXd theta_cache_;
    mutable Eigen::MatrixXd gram_inv_cache_;
};

}  // namespace conex
