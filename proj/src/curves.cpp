#include "conex/curves.hpp"

#include <cmath>
#include <stdexcept>

namespace conex {

std::vector<double> reference_curve(const std::string& setting, const CurveParams& params,
                                    std::span<const double> t_grid) {
    double rate_factor = 0.0;   // multiplies sqrt(t)
    double constant_scale = 0.0;  // multiplies d0 / (a v0 (a v0 + d0))
    const double h = params.horizon_steps;
    if (setting == "mab") {
        rate_factor = std::sqrt(params.num_actions);
        constant_scale = params.num_actions;
    } else if (setting == "linear_bandit") {
        rate_factor = params.dim;
        constant_scale = params.dim * params.dim;
    } else if (setting == "tabular") {
        rate_factor = std::sqrt(h * h * h * params.num_states * params.num_actions);
        constant_scale = params.num_states * params.num_actions * h * h * h;
    } else if (setting == "low_rank") {
        rate_factor = std::sqrt(params.dim * params.dim * params.dim * h * h * h * h);
        constant_scale = params.dim * params.dim * params.dim * h * h * h * h;
    } else {
        throw std::invalid_argument("reference_curve: unknown setting '" + setting + "'");
    }
    double constant = 0.0;
    if (params.delta0 > 0.0) {
        const double av0 = params.alpha * params.v0;
        if (!(av0 > 0.0))
            throw std::invalid_argument("reference_curve: alpha * v0 must be positive");
        constant = constant_scale * params.delta0 / (av0 * (av0 + params.delta0));
    }
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(params.scale * (rate_factor * std::sqrt(t) + constant));
    return out;
}

}  // namespace conex
