#pragma once

#include <vector>

#include "dsg/game.hpp"

namespace dsg {

// Values consistent with `profile` under the propagated `beliefs`, computed
// exactly by backward substitution over the DAG (one value per player per
// state, the joint type weighted by the belief at each state).
ValueTable evaluate_strategies(const GameSpec& spec, const StrategyProfile& profile,
                               const std::vector<JointTypeBelief>& beliefs);

// Type-dependent values: one independent backward pass per joint type
// vector, with behavior and transitions conditioned on that vector.
ValueTable evaluate_strategies_tdv(const GameSpec& spec, const StrategyProfile& profile);

// Dense linear solve of A x = b (square, pivoted). Throws on singular
// systems or when the residual exceeds 1e-8 * (1 + max|b|).
std::vector<double> solve_linear_system(const std::vector<std::vector<double>>& coefficients,
                                        const std::vector<double>& constants);

}  // namespace dsg
