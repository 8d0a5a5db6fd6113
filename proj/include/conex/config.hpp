#pragma once

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conex/agents.hpp"
#include "conex/environments.hpp"
#include "conex/runner.hpp"

namespace conex {

struct AgentConfig {
    std::string kind = "ucb";  // ucb | linucb | ucbvi | lsvi_ucb | uniform_random
    double delta = 0.1;
    double lambda_reg = 1.0;               // linucb, lsvi_ucb
    std::string bonus_mode = "bernstein";  // ucbvi: bernstein | hoeffding
    double bonus_scale = 1.0;              // ucbvi
    double beta_scale = 1.0;               // lsvi_ucb
    std::optional<double> beta_override;   // lsvi_ucb
};

struct ExperimentConfig {
    EnvironmentInstance environment;
    AgentConfig agent;
    MetaSpec meta;
    BaselineSpec baseline;
    long horizon = 1;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;                   // empty: keep everything in memory
    std::optional<double> reference_scale;    // emit a reference curve when set

    // Fully-resolved form (defaults filled in, environment inlined) so an
    // emitted run is self-describing.
    nlohmann::json to_json() const;
};

// Parses and validates a config. Errors name the offending field path.
// base_dir resolves relative environment file references.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

// Builds the agent matching the config; throws when the agent kind does not
// pair with the environment family.
std::unique_ptr<Agent> make_agent(const AgentConfig& agent, const EnvironmentInstance& env,
                                  long horizon);

}  // namespace conex
