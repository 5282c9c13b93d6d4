#include "dsg/beliefs.hpp"

#include <stdexcept>

namespace dsg {

namespace {
constexpr double kZeroReach = 1e-300;
}

std::vector<double> joint_action_weights(
    const GameSpec& spec, int state,
    const std::vector<std::vector<std::vector<double>>>& strategy_at_state,
    std::int64_t joint_type) {
  const MixedRadix& actions = spec.action_radix[state];
  const int n = spec.num_players;
  std::vector<double> weights(actions.total, 1.0);
  // Build the product player by player to avoid per-entry digit decomposition.
  std::int64_t block = actions.total;
  for (int p = 0; p < n; ++p) {
    const int count = actions.sizes[p];
    const std::int64_t stride = actions.strides[p];
    const std::vector<double>& dist =
        strategy_at_state[p][spec.type_radix.digit(joint_type, p)];
    block = stride * count;  // size of one repetition of this player's cycle
    for (std::int64_t base = 0; base < actions.total; base += block) {
      for (int a = 0; a < count; ++a) {
        const double w = dist[a];
        const std::int64_t lo = base + a * stride;
        for (std::int64_t k = 0; k < stride; ++k) weights[lo + k] *= w;
      }
    }
  }
  return weights;
}

void push_state_mass(const GameSpec& spec, int state,
                     const std::vector<std::vector<std::vector<double>>>& strategy_at_state,
                     std::vector<std::vector<double>>& mass) {
  for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
    const double m = mass[state][t];
    if (m <= 0.0) continue;
    const std::vector<double> weights = joint_action_weights(spec, state, strategy_at_state, t);
    for (std::int64_t a = 0; a < spec.action_radix[state].total; ++a) {
      const double wa = weights[a];
      if (wa <= 0.0) continue;
      spec.for_each_outcome(state, t, a, [&](int succ, double p) {
        if (!spec.is_terminal(succ)) mass[succ][t] += m * wa * p;
      });
    }
  }
}

PropagateResult propagate(const GameSpec& spec, const StrategyProfile& profile, int up_to_state) {
  PropagateResult result;
  result.reach.mass.assign(spec.num_nonterminal,
                           std::vector<double>(spec.type_radix.total, 0.0));
  result.reach.total.assign(spec.num_nonterminal, 0.0);
  result.reach.zero_reach.assign(spec.num_nonterminal, false);
  result.beliefs.assign(spec.num_nonterminal, JointTypeBelief{});

  const int root = spec.initial_state();
  for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
    result.reach.mass[root][t] = spec.prior[t];
  }

  for (int pos = 0; pos < spec.num_nonterminal; ++pos) {
    const int s = spec.topo_order[pos];
    double total = 0.0;
    for (double m : result.reach.mass[s]) total += m;
    result.reach.total[s] = total;
    if (total > kZeroReach) {
      std::vector<double> b(result.reach.mass[s]);
      for (double& x : b) x /= total;
      result.beliefs[s] = {spec.type_radix, std::move(b)};
    } else {
      result.reach.zero_reach[s] = true;
      result.beliefs[s] = spec.prior_belief();
    }
    if (s == up_to_state) break;
    push_state_mass(spec, s, profile.dist[s], result.reach.mass);
  }
  return result;
}

std::vector<JointTypeBelief> stale_beliefs(const GameSpec& spec,
                                           const StrategyProfile& previous_profile) {
  return propagate(spec, previous_profile, spec.topo_order.back()).beliefs;
}

}  // namespace dsg
