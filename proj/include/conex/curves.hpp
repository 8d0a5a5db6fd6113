#pragma once

#include <span>
#include <string>
#include <vector>

namespace conex {

// Problem constants feeding the reference rate expressions. Only the fields
// relevant to the chosen setting are read.
struct CurveParams {
    double alpha = 0.1;
    double v0 = 0.5;      // baseline value mu_0
    double delta0 = 0.0;  // baseline gap; 0 drops the constant term
    double num_actions = 1.0;
    double num_states = 1.0;
    double horizon_steps = 1.0;  // episode length H
    double dim = 1.0;
    double scale = 1.0;  // plotting knob, not a claim
};

// Rate-plus-constant overlay evaluated on a round grid:
//   mab:           sqrt(A t)        + A  d0 / (a v0 (a v0 + d0))
//   linear_bandit: d sqrt(t)        + d^2 d0 / (...)
//   tabular:       sqrt(H^3 S A t)  + S A H^3 d0 / (...)
//   low_rank:      sqrt(d^3 H^4 t)  + d^3 H^4 d0 / (...)
// all multiplied by `scale`; log factors are dropped.
std::vector<double> reference_curve(const std::string& setting, const CurveParams& params,
                                    std::span<const double> t_grid);

}  // namespace conex
