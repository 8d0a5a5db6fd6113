#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conex/agents.hpp"
#include "conex/budget.hpp"
#include "conex/environments.hpp"
#include "conex/trace.hpp"

namespace conex {

enum class MetaKind { none, budget_first, lcbce };

struct MetaSpec {
    MetaKind kind = MetaKind::none;
    LambdaMode lambda_mode = LambdaMode::stale;  // lcbce only
    std::optional<double> rate_c;                // budget_first only
};

// Budget ledger snapshot taken after each round's decision (lcbce only).
struct BudgetSnapshot {
    double accumulated = 0.0;
    double deficit_sum = 0.0;
    double deficit_max = 0.0;
};

struct ConservativeRun {
    RunTrace trace;
    std::vector<BudgetSnapshot> budget_log;  // empty unless the meta-algorithm is lcbce
    long baseline_plays = 0;
};

// Drives one run of `horizon` rounds. Baseline rounds pay v0 exactly, consume
// no randomness, and leave the agent untouched; candidate rounds ask the agent
// to propose, play the proposal, and let the agent learn from it.
ConservativeRun run_conservative(const EnvironmentInstance& env, Agent& agent,
                                 const MetaSpec& meta, const BaselineSpec& baseline, long horizon,
                                 std::uint64_t seed);

}  // namespace conex
