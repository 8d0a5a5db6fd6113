#pragma once

#include <span>
#include <string>

#include "conex/rng.hpp"
#include "conex/trace.hpp"

namespace conex {

// A policy put forward by a base algorithm, together with the high-probability
// lower confidence value lambda it computed for that policy. `key` is an
// agent-internal handle (arm index, action index, or a slot in the agent's
// committed policy list) that stays resolvable for the rest of the run.
struct Proposal {
    int key = -1;
    std::string id;
    double lcb = 0.0;
};

// Base algorithm driving one run: proposes a policy with a lower confidence
// value, executes it in its environment, and can re-evaluate the lower bound
// of any previously played policy under the data it holds now.
class Agent {
public:
    virtual ~Agent() = default;

    // Candidate policy under the current data. Deterministic agents return the
    // same proposal until new data arrives; rng is consumed only by randomized
    // agents.
    virtual Proposal propose(Rng& rng) = 0;

    // Executes the proposed policy, updates internal statistics, and returns
    // the realized reward for the round.
    virtual double play(const Proposal& proposal, Rng& rng) = 0;

    // Exact expected value of the proposed policy (environment oracle;
    // simulation-side accounting only, never visible to the algorithm).
    virtual double true_value(const Proposal& proposal) const = 0;

    // Lower confidence value of a previously issued proposal under the data
    // held now.
    virtual double current_lcb(const Proposal& proposal) const = 0;
};

// Sum of (true value - lambda at play) over the given values; the harness
// checks this grows sublinearly in the number of plays.
double lcb_gap_sum(std::span<const double> true_values, std::span<const double> lambdas);

// Same sum read off a finished trace (candidate rounds only).
double lcb_gap_sum(const RunTrace& trace);

}  // namespace conex
