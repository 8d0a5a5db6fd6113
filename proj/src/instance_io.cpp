#include "conex/instance_io.hpp"

#include <fstream>
#include <stdexcept>

namespace conex {

using nlohmann::json;

std::string noise_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::zero: return "zero";
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::uniform: return "uniform";
    }
    return "gaussian";
}

NoiseKind noise_from_name(const std::string& name) {
    if (name == "zero") return NoiseKind::zero;
    if (name == "gaussian") return NoiseKind::gaussian;
    if (name == "uniform") return NoiseKind::uniform;
    throw std::invalid_argument("unknown noise model '" + name + "'");
}

std::string reward_draw_name(RewardDraw draw) {
    return draw == RewardDraw::deterministic ? "deterministic" : "bernoulli";
}

RewardDraw reward_draw_from_name(const std::string& name) {
    if (name == "deterministic") return RewardDraw::deterministic;
    if (name == "bernoulli") return RewardDraw::bernoulli;
    throw std::invalid_argument("unknown reward draw '" + name + "'");
}

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

}  // namespace

nlohmann::json instance_to_json(const EnvironmentInstance& env) {
    json j;
    if (const auto* mab = std::get_if<MabInstance>(&env)) {
        j["type"] = "mab";
        j["means"] = mab->means;
        j["baseline_mean"] = mab->baseline_mean;
        j["noise"] = noise_name(mab->noise);
    } else if (const auto* lin = std::get_if<LinearBanditInstance>(&env)) {
        j["type"] = "linear_bandit";
        j["theta_star"] = vector_to_json(lin->theta_star);
        json acts = json::array();
        for (const auto& a : lin->actions) acts.push_back(vector_to_json(a));
        j["actions"] = std::move(acts);
        j["baseline_action_reward"] = lin->baseline_action_reward;
        j["b_norm"] = lin->b_norm;
        j["d_norm"] = lin->d_norm;
        j["noise"] = noise_name(lin->noise);
    } else if (const auto* tab = std::get_if<TabularMdpInstance>(&env)) {
        j["type"] = "tabular_mdp";
        j["num_states"] = tab->num_states;
        j["num_actions"] = tab->num_actions;
        j["horizon"] = tab->horizon;
        j["r_max"] = tab->r_max;
        j["initial_state"] = tab->initial_state;
        j["reward_draw"] = reward_draw_name(tab->reward_draw);
        j["transitions"] = tab->transitions;
        j["rewards"] = tab->rewards;
    } else if (const auto* low = std::get_if<LowRankMdpInstance>(&env)) {
        j["type"] = "low_rank_mdp";
        j["dim"] = low->dim;
        j["num_states"] = low->num_states;
        j["num_actions"] = low->num_actions;
        j["horizon"] = low->horizon;
        j["initial_state"] = low->initial_state;
        j["reward_draw"] = reward_draw_name(low->reward_draw);
        json feats = json::array();
        for (const auto& f : low->features) feats.push_back(vector_to_json(f));
        j["features"] = std::move(feats);
        json measures = json::array();
        for (const auto& m : low->measures) {
            json rows = json::array();
            for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
            measures.push_back(std::move(rows));
        }
        j["measures"] = std::move(measures);
        json thetas = json::array();
        for (const auto& th : low->theta) thetas.push_back(vector_to_json(th));
        j["theta"] = std::move(thetas);
    }
    return j;
}

EnvironmentInstance instance_from_json(const nlohmann::json& j) {
    if (!j.contains("type")) throw std::invalid_argument("instance: missing 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "mab") {
        MabInstance env;
        env.means = j.at("means").get<std::vector<double>>();
        env.baseline_mean = j.at("baseline_mean").get<double>();
        if (j.contains("noise")) env.noise = noise_from_name(j.at("noise").get<std::string>());
        env.validate();
        return env;
    }
    if (type == "linear_bandit") {
        LinearBanditInstance env;
        env.theta_star = vector_from_json(j.at("theta_star"));
        for (const auto& a : j.at("actions")) env.actions.push_back(vector_from_json(a));
        env.baseline_action_reward = j.at("baseline_action_reward").get<double>();
        if (j.contains("b_norm")) env.b_norm = j.at("b_norm").get<double>();
        if (j.contains("d_norm")) env.d_norm = j.at("d_norm").get<double>();
        if (j.contains("noise")) env.noise = noise_from_name(j.at("noise").get<std::string>());
        env.validate();
        return env;
    }
    if (type == "tabular_mdp") {
        TabularMdpInstance env;
        env.num_states = j.at("num_states").get<int>();
        env.num_actions = j.at("num_actions").get<int>();
        env.horizon = j.at("horizon").get<int>();
        if (j.contains("r_max")) env.r_max = j.at("r_max").get<double>();
        if (j.contains("initial_state")) env.initial_state = j.at("initial_state").get<int>();
        if (j.contains("reward_draw"))
            env.reward_draw = reward_draw_from_name(j.at("reward_draw").get<std::string>());
        env.transitions = j.at("transitions").get<std::vector<double>>();
        env.rewards = j.at("rewards").get<std::vector<double>>();
        env.validate();
        return env;
    }
    if (type == "low_rank_mdp") {
        LowRankMdpInstance env;
        env.dim = j.at("dim").get<int>();
        env.num_states = j.at("num_states").get<int>();
        env.num_actions = j.at("num_actions").get<int>();
        env.horizon = j.at("horizon").get<int>();
        if (j.contains("initial_state")) env.initial_state = j.at("initial_state").get<int>();
        if (j.contains("reward_draw"))
            env.reward_draw = reward_draw_from_name(j.at("reward_draw").get<std::string>());
        for (const auto& f : j.at("features")) env.features.push_back(vector_from_json(f));
        for (const auto& m : j.at("measures")) {
            Eigen::MatrixXd mat(env.dim, env.num_states);
            if (static_cast<int>(m.size()) != env.dim)
                throw std::invalid_argument("instance: measure row count != dim");
            for (int i = 0; i < env.dim; ++i) mat.row(i) = vector_from_json(m[i]).transpose();
            env.measures.push_back(std::move(mat));
        }
        for (const auto& th : j.at("theta")) env.theta.push_back(vector_from_json(th));
        env.validate();
        return env;
    }
    throw std::invalid_argument("instance: unknown type '" + type + "'");
}

EnvironmentInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    json j;
    in >> j;
    return instance_from_json(j);
}

void save_instance(const EnvironmentInstance& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
    out << instance_to_json(env).dump(2) << "\n";
}

}  // namespace conex
