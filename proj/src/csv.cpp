#include "conex/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conex {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest form that parses back exactly
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(probe, "%lf", &back);
        if (back == v) return probe;
    }
    return buf;
}

void write_run_csv(const std::string& path, const ConservativeRun& run) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "t,policy_id,is_baseline,realized_reward,true_value,cum_regret,"
           "constraint_lhs,constraint_rhs,budget_accumulated,deficit_sum,deficit_max\n";
    const RunTrace& trace = run.trace;
    const double floor_per_round = (1.0 - trace.baseline.alpha) * trace.baseline.v0;
    double regret = 0.0;
    double earned = 0.0;
    for (int i = 0; i < trace.length(); ++i) {
        const RoundRecord& rec = trace.records[i];
        regret += trace.v_star - rec.true_value;
        earned += rec.true_value;
        out << rec.t << ',' << rec.policy_id << ',' << (rec.is_baseline ? 1 : 0) << ','
            << format_double(rec.realized_reward) << ',' << format_double(rec.true_value) << ','
            << format_double(regret) << ',' << format_double(earned) << ','
            << format_double(floor_per_round * (i + 1)) << ',';
        if (!run.budget_log.empty()) {
            const BudgetSnapshot& snap = run.budget_log[i];
            out << format_double(snap.accumulated) << ',' << format_double(snap.deficit_sum) << ','
                << format_double(snap.deficit_max);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::stringstream ss(s);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!s.empty() && s.back() == ',') out.push_back("");
        return out;
    };
    if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.rows.push_back(split(line));
    }
    return table;
}

}  // namespace conex
