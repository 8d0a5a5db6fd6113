#include "conex/trace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conex {

void BaselineSpec::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("baseline: alpha must lie in [0, 1], got " + std::to_string(alpha));
    if (!(v0 >= 0.0))
        throw std::invalid_argument("baseline: v0 must be nonnegative, got " + std::to_string(v0));
    if (delta0 && !(*delta0 >= 0.0))
        throw std::invalid_argument("baseline: delta0 must be nonnegative, got " + std::to_string(*delta0));
}

void RunTrace::validate() const {
    baseline.validate();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RoundRecord& rec = records[i];
        if (rec.t != static_cast<int>(i) + 1)
            throw std::logic_error("trace: record " + std::to_string(i) + " has index " +
                                   std::to_string(rec.t) + ", expected " + std::to_string(i + 1));
        if (rec.is_baseline && rec.true_value != baseline.v0)
            throw std::logic_error("trace: baseline round " + std::to_string(rec.t) +
                                   " has true_value != v0");
        if (rec.true_value > v_star + kSlackTol)
            throw std::logic_error("trace: round " + std::to_string(rec.t) +
                                   " has true_value above v_star");
    }
}

namespace {

void check_round_index(const RunTrace& trace, int t, int lowest) {
    if (t < lowest || t > trace.length())
        throw std::out_of_range("round index " + std::to_string(t) + " outside [" +
                                std::to_string(lowest) + ", " + std::to_string(trace.length()) + "]");
}

}  // namespace

double cumulative_regret(const RunTrace& trace, int t) {
    check_round_index(trace, t, 0);
    double total = 0.0;
    for (int j = 0; j < t; ++j) total += trace.v_star - trace.records[j].true_value;
    return total;
}

double constraint_slack(const RunTrace& trace, int t) {
    check_round_index(trace, t, 1);
    double earned = 0.0;
    for (int j = 0; j < t; ++j) earned += trace.records[j].true_value;
    return earned - (1.0 - trace.baseline.alpha) * t * trace.baseline.v0;
}

std::vector<int> constraint_violations(const RunTrace& trace) {
    std::vector<int> out;
    const double floor_per_round = (1.0 - trace.baseline.alpha) * trace.baseline.v0;
    double earned = 0.0;
    for (int j = 0; j < trace.length(); ++j) {
        earned += trace.records[j].true_value;
        if (earned - floor_per_round * (j + 1) < -kSlackTol) out.push_back(j + 1);
    }
    return out;
}

}  // namespace conex
