#pragma once

#include <json.hpp>

#include <string>

#include "conex/environments.hpp"

namespace conex {

// JSON schema mirrors the instance structs; "type" tags the family
// (mab | linear_bandit | tabular_mdp | low_rank_mdp).
nlohmann::json instance_to_json(const EnvironmentInstance& env);
EnvironmentInstance instance_from_json(const nlohmann::json& j);

EnvironmentInstance load_instance(const std::string& path);
void save_instance(const EnvironmentInstance& env, const std::string& path);

std::string noise_name(NoiseKind kind);
NoiseKind noise_from_name(const std::string& name);
std::string reward_draw_name(RewardDraw draw);
RewardDraw reward_draw_from_name(const std::string& name);

}  // namespace conex
