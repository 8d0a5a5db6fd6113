#include "conex/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "conex/instance_io.hpp"
#include "conex/linucb_agent.hpp"
#include "conex/lsvi_ucb_agent.hpp"
#include "conex/random_agent.hpp"
#include "conex/ucb_agent.hpp"
#include "conex/ucbvi_agent.hpp"

namespace conex {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument("config: " + path + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) fail(path + "." + key, "missing");
    return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

EnvironmentInstance parse_environment(const json& j, const std::string& base_dir) {
    if (j.contains("file")) {
        std::filesystem::path p = j.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        if (!std::filesystem::exists(p))
            fail("environment.file", "referenced file '" + p.string() + "' does not exist");
        return load_instance(p.string());
    }
    if (j.contains("generate")) {
        const json& g = j.at("generate");
        const std::string family = require(g, "family", "environment.generate").get<std::string>();
        std::uint64_t seed = static_cast<std::uint64_t>(
            require_number(g, "seed", "environment.generate"));
        if (family == "mab") {
            NoiseKind noise = g.contains("noise")
                                  ? noise_from_name(g.at("noise").get<std::string>())
                                  : NoiseKind::gaussian;
            return make_random_mab(static_cast<int>(require_number(g, "num_arms", "environment.generate")),
                                   seed, noise);
        }
        if (family == "linear_bandit") {
            NoiseKind noise = g.contains("noise")
                                  ? noise_from_name(g.at("noise").get<std::string>())
                                  : NoiseKind::gaussian;
            auto env = make_random_linear_bandit(
                static_cast<int>(require_number(g, "dim", "environment.generate")),
                static_cast<int>(require_number(g, "num_actions", "environment.generate")), seed,
                noise);
            return env;
        }
        if (family == "tabular_mdp") {
            bool det = g.contains("deterministic") && g.at("deterministic").get<bool>();
            RewardDraw draw = g.contains("reward_draw")
                                  ? reward_draw_from_name(g.at("reward_draw").get<std::string>())
                                  : RewardDraw::bernoulli;
            return make_random_tabular(
                static_cast<int>(require_number(g, "num_states", "environment.generate")),
                static_cast<int>(require_number(g, "num_actions", "environment.generate")),
                static_cast<int>(require_number(g, "horizon", "environment.generate")), seed, det,
                draw);
        }
        if (family == "low_rank_mdp") {
            RewardDraw draw = g.contains("reward_draw")
                                  ? reward_draw_from_name(g.at("reward_draw").get<std::string>())
                                  : RewardDraw::bernoulli;
            return make_random_low_rank(
                static_cast<int>(require_number(g, "dim", "environment.generate")),
                static_cast<int>(require_number(g, "num_states", "environment.generate")),
                static_cast<int>(require_number(g, "num_actions", "environment.generate")),
                static_cast<int>(require_number(g, "horizon", "environment.generate")), seed, draw);
        }
        fail("environment.generate.family", "unknown family '" + family + "'");
    }
    try {
        return instance_from_json(j);
    } catch (const std::exception& e) {
        fail("environment", e.what());
    }
}

MetaSpec parse_meta(const json* j) {
    MetaSpec meta;
    if (!j) return meta;
    const std::string kind = j->contains("type") ? j->at("type").get<std::string>() : "none";
    if (kind == "none")
        meta.kind = MetaKind::none;
    else if (kind == "budget_first")
        meta.kind = MetaKind::budget_first;
    else if (kind == "lcbce")
        meta.kind = MetaKind::lcbce;
    else
        fail("meta.type", "unknown meta-algorithm '" + kind + "'");
    if (j->contains("lambda_mode")) {
        const std::string mode = j->at("lambda_mode").get<std::string>();
        if (mode == "stale")
            meta.lambda_mode = LambdaMode::stale;
        else if (mode == "fresh")
            meta.lambda_mode = LambdaMode::fresh;
        else
            fail("meta.lambda_mode", "expected 'stale' or 'fresh'");
    }
    return meta;
}

AgentConfig parse_agent(const json& j) {
    AgentConfig agent;
    agent.kind = require(j, "type", "agent").get<std::string>();
    if (j.contains("delta")) agent.delta = require_number(j, "delta", "agent");
    if (j.contains("lambda_reg")) agent.lambda_reg = require_number(j, "lambda_reg", "agent");
    if (j.contains("bonus_mode")) agent.bonus_mode = j.at("bonus_mode").get<std::string>();
    if (j.contains("bonus_scale")) agent.bonus_scale = require_number(j, "bonus_scale", "agent");
    if (j.contains("beta_scale")) agent.beta_scale = require_number(j, "beta_scale", "agent");
    if (j.contains("beta_override"))
        agent.beta_override = require_number(j, "beta_override", "agent");
    if (!(agent.delta > 0.0 && agent.delta < 1.0)) fail("agent.delta", "must lie in (0, 1)");
    if (agent.bonus_mode != "bernstein" && agent.bonus_mode != "hoeffding")
        fail("agent.bonus_mode", "expected 'bernstein' or 'hoeffding'");
    return agent;
}

}  // namespace

ExperimentConfig config_from_json(const json& j, const std::string& base_dir) {
    ExperimentConfig cfg;
    cfg.environment = parse_environment(require(j, "environment", ""), base_dir);
    validate(cfg.environment);
    cfg.agent = parse_agent(require(j, "agent", ""));
    cfg.meta = parse_meta(j.contains("meta") ? &j.at("meta") : nullptr);

    const json& b = require(j, "baseline", "");
    cfg.baseline.alpha = require_number(b, "alpha", "baseline");
    const double v_star = optimal_value(cfg.environment);
    if (b.contains("v0") && b.contains("v0_fraction"))
        fail("baseline", "give either v0 or v0_fraction, not both");
    if (b.contains("v0")) {
        cfg.baseline.v0 = require_number(b, "v0", "baseline");
    } else if (b.contains("v0_fraction")) {
        cfg.baseline.v0 = require_number(b, "v0_fraction", "baseline") * v_star;
    } else if (const auto* mab = std::get_if<MabInstance>(&cfg.environment)) {
        cfg.baseline.v0 = mab->baseline_mean;
    } else if (const auto* lin = std::get_if<LinearBanditInstance>(&cfg.environment)) {
        cfg.baseline.v0 = lin->baseline_action_reward;
    } else {
        fail("baseline.v0", "required for MDP environments");
    }
    if (b.contains("delta0")) {
        if (b.at("delta0").is_string() && b.at("delta0").get<std::string>() == "auto")
            cfg.baseline.delta0 = v_star - cfg.baseline.v0;
        else
            cfg.baseline.delta0 = require_number(b, "delta0", "baseline");
    }
    if (b.contains("C")) cfg.meta.rate_c = require_number(b, "C", "baseline");
    cfg.baseline.validate();
    if (cfg.baseline.v0 > v_star + kSlackTol)
        fail("baseline.v0", "exceeds the environment's optimal value");
    // the baseline arm/action is part of the bandit instances; keep them in sync
    if (const auto* mab = std::get_if<MabInstance>(&cfg.environment)) {
        if (std::abs(cfg.baseline.v0 - mab->baseline_mean) > 1e-12)
            fail("baseline.v0", "must equal the mab baseline arm mean");
    } else if (const auto* lin = std::get_if<LinearBanditInstance>(&cfg.environment)) {
        if (std::abs(cfg.baseline.v0 - lin->baseline_action_reward) > 1e-12)
            fail("baseline.v0", "must equal the linear bandit baseline reward");
    }

    const json& h = require(j, "horizon", "");
    if (!h.is_number_integer() || h.get<long>() < 1) fail("horizon", "must be an integer >= 1");
    cfg.horizon = h.get<long>();

    const json& s = require(j, "seeds", "");
    if (s.is_array()) {
        for (const auto& e : s) cfg.seeds.push_back(e.get<std::uint64_t>());
    } else if (s.is_object()) {
        std::uint64_t base = static_cast<std::uint64_t>(require_number(s, "base", "seeds"));
        long count = static_cast<long>(require_number(s, "count", "seeds"));
        if (count < 1) fail("seeds.count", "must be >= 1");
        for (long i = 0; i < count; ++i) cfg.seeds.push_back(base + static_cast<std::uint64_t>(i));
    } else {
        fail("seeds", "expected a list or {base, count}");
    }
    if (cfg.seeds.empty()) fail("seeds", "must not be empty");
    std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
    if (uniq.size() != cfg.seeds.size()) fail("seeds", "seeds must be distinct");

    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("reference_curve"))
        cfg.reference_scale = j.at("reference_curve").value("scale", 1.0);

    if (cfg.meta.kind == MetaKind::budget_first) {
        if (!cfg.meta.rate_c) fail("baseline.C", "required by budget_first");
        if (!cfg.baseline.delta0) fail("baseline.delta0", "required by budget_first");
        if (!(cfg.baseline.alpha * cfg.baseline.v0 > 0.0))
            fail("baseline", "alpha * v0 must be positive for budget_first");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j, std::filesystem::path(path).parent_path().string());
}

json ExperimentConfig::to_json() const {
    json j;
    j["environment"] = instance_to_json(environment);
    json a;
    a["type"] = agent.kind;
    a["delta"] = agent.delta;
    a["lambda_reg"] = agent.lambda_reg;
    a["bonus_mode"] = agent.bonus_mode;
    a["bonus_scale"] = agent.bonus_scale;
    a["beta_scale"] = agent.beta_scale;
    if (agent.beta_override) a["beta_override"] = *agent.beta_override;
    j["agent"] = std::move(a);
    json m;
    m["type"] = meta.kind == MetaKind::none          ? "none"
                : meta.kind == MetaKind::budget_first ? "budget_first"
                                                      : "lcbce";
    m["lambda_mode"] = meta.lambda_mode == LambdaMode::stale ? "stale" : "fresh";
    j["meta"] = std::move(m);
    json b;
    b["alpha"] = baseline.alpha;
    b["v0"] = baseline.v0;
    if (baseline.delta0) b["delta0"] = *baseline.delta0;
    if (meta.rate_c) b["C"] = *meta.rate_c;
    j["baseline"] = std::move(b);
    j["horizon"] = horizon;
    j["seeds"] = seeds;
    if (!output_dir.empty()) j["output_dir"] = output_dir;
    if (reference_scale) j["reference_curve"] = {{"scale", *reference_scale}};
    return j;
}

std::unique_ptr<Agent> make_agent(const AgentConfig& agent, const EnvironmentInstance& env,
                                  long horizon) {
    if (agent.kind == "ucb") {
        const auto* mab = std::get_if<MabInstance>(&env);
        if (!mab) fail("agent.type", "ucb pairs with a mab environment");
        return std::make_unique<UcbAgent>(*mab, agent.delta);
    }
    if (agent.kind == "uniform_random") {
        const auto* mab = std::get_if<MabInstance>(&env);
        if (!mab) fail("agent.type", "uniform_random pairs with a mab environment");
        return std::make_unique<UniformRandomAgent>(*mab);
    }
    if (agent.kind == "linucb") {
        const auto* lin = std::get_if<LinearBanditInstance>(&env);
        if (!lin) fail("agent.type", "linucb pairs with a linear_bandit environment");
        return std::make_unique<LinUcbAgent>(*lin, agent.delta, agent.lambda_reg);
    }
    if (agent.kind == "ucbvi") {
        const auto* tab = std::get_if<TabularMdpInstance>(&env);
        if (!tab) fail("agent.type", "ucbvi pairs with a tabular_mdp environment");
        BonusMode mode =
            agent.bonus_mode == "hoeffding" ? BonusMode::hoeffding : BonusMode::bernstein;
        return std::make_unique<UcbviAgent>(*tab, agent.delta, horizon, mode, agent.bonus_scale);
    }
    if (agent.kind == "lsvi_ucb") {
        const auto* low = std::get_if<LowRankMdpInstance>(&env);
        if (!low) fail("agent.type", "lsvi_ucb pairs with a low_rank_mdp environment");
        return std::make_unique<LsviUcbAgent>(*low, agent.delta, horizon, agent.lambda_reg,
                                              agent.beta_scale, agent.beta_override);
    }
    fail("agent.type", "unknown agent '" + agent.kind + "'");
}

}  // namespace conex
