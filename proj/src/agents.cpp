#include "conex/agents.hpp"

#include <stdexcept>

namespace conex {

double lcb_gap_sum(std::span<const double> true_values, std::span<const double> lambdas) {
    if (true_values.size() != lambdas.size())
        throw std::invalid_argument("lcb_gap_sum: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < true_values.size(); ++i) total += true_values[i] - lambdas[i];
    return total;
}

double lcb_gap_sum(const RunTrace& trace) {
    double total = 0.0;
    for (const RoundRecord& rec : trace.records)
        if (!rec.is_baseline && rec.lcb_at_play) total += rec.true_value - *rec.lcb_at_play;
    return total;
}

}  // namespace conex
