#pragma once

#include <string>
#include <vector>

#include "conex/runner.hpp"

namespace conex {

// Shortest round-trip-exact decimal form of a double.
std::string format_double(double v);

// One row per round:
// t,policy_id,is_baseline,realized_reward,true_value,cum_regret,
// constraint_lhs,constraint_rhs,budget_accumulated,deficit_sum,deficit_max
// Budget columns are empty unless the run carries a budget log. UTF-8, LF,
// header row mandatory.
void write_run_csv(const std::string& path, const ConservativeRun& run);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace conex
