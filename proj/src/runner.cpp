#include "conex/runner.hpp"

#include <stdexcept>

namespace conex {

namespace {

RoundRecord baseline_record(int t, const BaselineSpec& baseline) {
    RoundRecord rec;
    rec.t = t;
    rec.policy_id = "baseline";
    rec.is_baseline = true;
    rec.realized_reward = baseline_episode(baseline);
    rec.true_value = baseline.v0;
    return rec;
}

}  // namespace

ConservativeRun run_conservative(const EnvironmentInstance& env, Agent& agent,
                                 const MetaSpec& meta, const BaselineSpec& baseline, long horizon,
                                 std::uint64_t seed) {
    baseline.validate();
    if (horizon < 1) throw std::invalid_argument("run: horizon must be at least 1");

    ConservativeRun out;
    out.trace.v_star = optimal_value(env);
    out.trace.baseline = baseline;
    out.trace.seed = seed;
    out.trace.records.reserve(horizon);
    if (baseline.v0 > out.trace.v_star + kSlackTol)
        throw std::invalid_argument("run: baseline v0 exceeds the optimal value");

    Rng rng(seed);

    std::optional<BudgetFirstSchedule> schedule;
    if (meta.kind == MetaKind::budget_first) {
        if (!meta.rate_c)
            throw std::invalid_argument("run: budget_first needs the rate constant C");
        schedule = budget_first_schedule(*meta.rate_c, baseline);
    }

    std::optional<BudgetState> ledger;
    std::vector<Proposal> played;  // for fresh-lambda re-evaluation
    if (meta.kind == MetaKind::lcbce) {
        ledger.emplace(baseline);
        out.budget_log.reserve(horizon);
    }

    auto play_candidate = [&](int t, const Proposal& proposal) {
        RoundRecord rec;
        rec.t = t;
        rec.policy_id = proposal.id;
        rec.realized_reward = agent.play(proposal, rng);
        rec.true_value = agent.true_value(proposal);
        rec.lcb_at_play = proposal.lcb;
        out.trace.records.push_back(std::move(rec));
    };

    for (long t = 1; t <= horizon; ++t) {
        switch (meta.kind) {
            case MetaKind::none: {
                play_candidate(t, agent.propose(rng));
                break;
            }
            case MetaKind::budget_first: {
                if (budget_first_plays_baseline(t, *schedule)) {
                    out.trace.records.push_back(baseline_record(t, baseline));
                    out.baseline_plays += 1;
                } else {
                    play_candidate(t, agent.propose(rng));
                }
                break;
            }
            case MetaKind::lcbce: {
                Proposal proposal = agent.propose(rng);
                std::vector<double> fresh;
                const std::vector<double>* fresh_ptr = nullptr;
                if (meta.lambda_mode == LambdaMode::fresh) {
                    fresh.reserve(played.size());
                    for (const Proposal& past : played) fresh.push_back(agent.current_lcb(past));
                    fresh_ptr = &fresh;
                }
                Decision d = ledger->decide(proposal.lcb, meta.lambda_mode, fresh_ptr);
                if (d == Decision::candidate) {
                    play_candidate(t, proposal);
                    played.push_back(proposal);
                } else {
                    out.trace.records.push_back(baseline_record(t, baseline));
                    out.baseline_plays += 1;
                }
                out.budget_log.push_back(
                    {ledger->accumulated(), ledger->deficit_sum(), ledger->deficit_max()});
                break;
            }
        }
    }
    return out;
}

}  // namespace conex
