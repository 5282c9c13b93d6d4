#include "dsg/values.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "dsg/beliefs.hpp"

namespace dsg {

ValueTable evaluate_strategies(const GameSpec& spec, const StrategyProfile& profile,
                               const std::vector<JointTypeBelief>& beliefs) {
  if (static_cast<int>(beliefs.size()) != spec.num_nonterminal) {
    throw std::invalid_argument("evaluate_strategies: missing beliefs");
  }
  for (int s = 0; s < spec.num_nonterminal; ++s) {
    if (static_cast<std::int64_t>(beliefs[s].mass.size()) != spec.type_radix.total) {
      throw std::invalid_argument("evaluate_strategies: missing belief at state " +
                                  spec.state_names[s]);
    }
  }

  ValueTable table = zero_values(spec, ValueMode::state_values);
  const int n = spec.num_players;
  std::vector<double> acc(n);
  for (int pos = spec.num_nonterminal - 1; pos >= 0; --pos) {
    const int s = spec.topo_order[pos];
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
      const double bt = beliefs[s].mass[t];
      if (bt <= 0.0) continue;
      const std::vector<double> weights = joint_action_weights(spec, s, profile.dist[s], t);
      for (std::int64_t a = 0; a < spec.action_radix[s].total; ++a) {
        const double wa = weights[a];
        if (wa <= 0.0) continue;
        spec.for_each_outcome(s, t, a, [&](int succ, double p) {
          const double w = bt * wa * p;
          if (spec.is_terminal(succ)) {
            for (int i = 0; i < n; ++i) acc[i] += w * spec.payoff_at(succ, t, i);
          } else {
            for (int i = 0; i < n; ++i) acc[i] += w * table.values[i][succ];
          }
        });
      }
    }
    for (int i = 0; i < n; ++i) table.values[i][s] = acc[i];
  }
  return table;
}

ValueTable evaluate_strategies_tdv(const GameSpec& spec, const StrategyProfile& profile) {
  ValueTable table = zero_values(spec, ValueMode::type_dependent);
  const int n = spec.num_players;
  std::vector<double> acc(n);
  for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
    auto& values = table.values_tdv[t];
    for (int pos = spec.num_nonterminal - 1; pos >= 0; --pos) {
      const int s = spec.topo_order[pos];
      std::fill(acc.begin(), acc.end(), 0.0);
      const std::vector<double> weights = joint_action_weights(spec, s, profile.dist[s], t);
      for (std::int64_t a = 0; a < spec.action_radix[s].total; ++a) {
        const double wa = weights[a];
        if (wa <= 0.0) continue;
        spec.for_each_outcome(s, t, a, [&](int succ, double p) {
          const double w = wa * p;
          if (spec.is_terminal(succ)) {
            for (int i = 0; i < n; ++i) acc[i] += w * spec.payoff_at(succ, t, i);
          } else {
            for (int i = 0; i < n; ++i) acc[i] += w * values[i][succ];
          }
        });
      }
      for (int i = 0; i < n; ++i) values[i][s] = acc[i];
    }
  }
  return table;
}

std::vector<double> solve_linear_system(const std::vector<std::vector<double>>& coefficients,
                                        const std::vector<double>& constants) {
  const int n = static_cast<int>(constants.size());
  if (static_cast<int>(coefficients.size()) != n) {
    throw std::invalid_argument("solve_linear_system: non-square system");
  }
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(coefficients[i].size()) != n) {
      throw std::invalid_argument("solve_linear_system: non-square system");
    }
    for (int j = 0; j < n; ++j) a(i, j) = coefficients[i][j];
    b(i) = constants[i];
  }
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  const double residual = (a * x - b).lpNorm<Eigen::Infinity>();
  const double tol = 1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>());
  if (!x.allFinite() || residual > tol) {
    throw std::runtime_error("solve_linear_system: singular or ill-conditioned system");
  }
  return std::vector<double>(x.data(), x.data() + n);
}

}  // namespace dsg
