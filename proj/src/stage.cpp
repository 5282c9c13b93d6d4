#include "dsg/stage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsg {

namespace {

// Mixed radix over the types of everyone except `player`, in player order.
MixedRadix opponent_radix(const MixedRadix& types, int player) {
  std::vector<int> sizes;
  sizes.reserve(types.digits() - 1);
  for (int j = 0; j < types.digits(); ++j) {
    if (j != player) sizes.push_back(types.sizes[j]);
  }
  return MixedRadix(std::move(sizes));
}

std::int64_t joint_type_of(const MixedRadix& types, int player, int own_type,
                           const MixedRadix& opp, std::int64_t combo) {
  std::int64_t jt = own_type * types.strides[player];
  int k = 0;
  for (int j = 0; j < types.digits(); ++j) {
    if (j == player) continue;
    jt += static_cast<std::int64_t>(opp.digit(combo, k)) * types.strides[j];
    ++k;
  }
  return jt;
}

// Per-agent tables used by the fictitious play inner loop.
struct AgentView {
  int player = 0;
  int type = 0;
  std::vector<int> opp_players;
  std::vector<double> weights;            // per opponent type combo
  std::vector<std::int64_t> joint_types;  // per opponent type combo
  std::vector<std::vector<int>> opp_types;
};

std::vector<AgentView> build_agents(const StageGame& g) {
  std::vector<AgentView> agents;
  for (int i = 0; i < g.num_players; ++i) {
    const MixedRadix opp = opponent_radix(g.types, i);
    for (int ti = 0; ti < g.types.sizes[i]; ++ti) {
      AgentView view;
      view.player = i;
      view.type = ti;
      for (int j = 0; j < g.num_players; ++j) {
        if (j != i) view.opp_players.push_back(j);
      }
      view.weights = conditioned_opponent_weights(g.belief, i, ti);
      view.joint_types.resize(opp.total);
      view.opp_types.resize(opp.total);
      for (std::int64_t c = 0; c < opp.total; ++c) {
        view.joint_types[c] = joint_type_of(g.types, i, ti, opp, c);
        view.opp_types[c] = opp.decompose(c);
      }
      agents.push_back(std::move(view));
    }
  }
  return agents;
}

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(v.size()); ++a) {
    if (v[a] > v[best]) best = a;
  }
  return best;
}

}  // namespace

std::vector<double> conditioned_opponent_weights(const JointTypeBelief& belief, int player,
                                                 int type) {
  const MixedRadix opp = opponent_radix(belief.types, player);
  std::vector<double> weights(opp.total, 0.0);
  double own_marginal = 0.0;
  for (std::int64_t t = 0; t < belief.types.total; ++t) {
    if (belief.types.digit(t, player) == type) own_marginal += belief.mass[t];
  }
  for (std::int64_t c = 0; c < opp.total; ++c) {
    if (own_marginal > 0.0) {
      weights[c] = belief.mass[joint_type_of(belief.types, player, type, opp, c)] / own_marginal;
    } else {
      for (int ti = 0; ti < belief.types.sizes[player]; ++ti) {
        weights[c] += belief.mass[joint_type_of(belief.types, player, ti, opp, c)];
      }
    }
  }
  return weights;
}

StageGame build_stage(const GameSpec& spec, int state, const ValueTable& values,
                      const JointTypeBelief& belief) {
  const bool tdv = values.mode == ValueMode::type_dependent;
  const auto shape_error = [&] {
    throw std::invalid_argument("build_stage: value table missing successor values for state " +
                                spec.state_names[state]);
  };
  if (tdv) {
    if (static_cast<std::int64_t>(values.values_tdv.size()) != spec.type_radix.total) shape_error();
    for (const auto& per_type : values.values_tdv) {
      if (static_cast<int>(per_type.size()) != spec.num_players) shape_error();
      for (const auto& v : per_type) {
        if (static_cast<int>(v.size()) != spec.num_states()) shape_error();
      }
    }
  } else {
    if (static_cast<int>(values.values.size()) != spec.num_players) shape_error();
    for (const auto& v : values.values) {
      if (static_cast<int>(v.size()) != spec.num_states()) shape_error();
    }
  }

  StageGame g;
  g.state = state;
  g.num_players = spec.num_players;
  g.action_counts = spec.action_counts[state];
  g.actions = spec.action_radix[state];
  g.types = spec.type_radix;
  g.belief = belief;
  g.payoff.assign(static_cast<std::size_t>(g.types.total) * g.actions.total * g.num_players, 0.0);

  const int n = g.num_players;
  for (std::int64_t t = 0; t < g.types.total; ++t) {
    for (std::int64_t a = 0; a < g.actions.total; ++a) {
      double* slot = &g.payoff[(static_cast<std::size_t>(t) * g.actions.total + a) * n];
      spec.for_each_outcome(state, t, a, [&](int succ, double p) {
        if (spec.is_terminal(succ)) {
          for (int i = 0; i < n; ++i) slot[i] += p * spec.payoff_at(succ, t, i);
        } else if (tdv) {
          for (int i = 0; i < n; ++i) slot[i] += p * values.values_tdv[t][i][succ];
        } else {
          for (int i = 0; i < n; ++i) slot[i] += p * values.values[i][succ];
        }
      });
    }
  }
  return g;
}

StageStrategy uniform_stage_strategy(const StageGame& g) {
  StageStrategy s;
  s.dist.resize(g.num_players);
  for (int i = 0; i < g.num_players; ++i) {
    s.dist[i].assign(g.types.sizes[i],
                     std::vector<double>(g.action_counts[i], 1.0 / g.action_counts[i]));
  }
  return s;
}

std::vector<double> agent_action_values(const StageGame& g, const StageStrategy& others,
                                        int player, int type) {
  const int n = g.num_players;
  const MixedRadix opp = opponent_radix(g.types, player);
  const std::vector<double> weights = conditioned_opponent_weights(g.belief, player, type);

  // Digit table: action of each player within each joint action.
  std::vector<std::vector<int>> digit(n, std::vector<int>(g.actions.total));
  for (std::int64_t a = 0; a < g.actions.total; ++a) {
    for (int j = 0; j < n; ++j) digit[j][a] = g.actions.digit(a, j);
  }

  std::vector<double> values(g.action_counts[player], 0.0);
  std::vector<int> opp_types(opp.digits());
  for (std::int64_t c = 0; c < opp.total; ++c) {
    const double w = weights[c];
    if (w <= 0.0) continue;
    const std::int64_t jt = joint_type_of(g.types, player, type, opp, c);
    opp_types = opp.decompose(c);
    const double* base = &g.payoff[static_cast<std::size_t>(jt) * g.actions.total * n];
    for (std::int64_t a = 0; a < g.actions.total; ++a) {
      double mix = 1.0;
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if (j == player) continue;
        mix *= others.dist[j][opp_types[k]][digit[j][a]];
        ++k;
      }
      values[digit[player][a]] += w * mix * base[a * n + player];
    }
  }
  return values;
}

StageStrategy fictitious_play(const StageGame& g, int iterations) {
  if (iterations < 1) throw std::invalid_argument("fictitious_play: iterations must be >= 1");
  for (int i = 0; i < g.num_players; ++i) {
    if (g.action_counts[i] < 1) {
      throw std::invalid_argument("fictitious_play: player " + std::to_string(i) +
                                  " has an empty action set");
    }
  }

  const int n = g.num_players;
  std::vector<AgentView> agents = build_agents(g);
  const int num_agents = static_cast<int>(agents.size());

  // br[player][type] = pure best response chosen this iteration
  std::vector<std::vector<int>> br(n);
  std::vector<std::vector<std::vector<double>>> counts(n);
  std::vector<std::vector<std::vector<double>>> cumulative(n);
  for (int i = 0; i < n; ++i) {
    br[i].assign(g.types.sizes[i], 0);
    counts[i].assign(g.types.sizes[i], std::vector<double>(g.action_counts[i], 0.0));
    cumulative[i].assign(g.types.sizes[i], std::vector<double>(g.action_counts[i], 0.0));
  }

  // Iteration 1: best response to uniform opponents.
  const StageStrategy uniform = uniform_stage_strategy(g);
  for (const AgentView& agent : agents) {
    const std::vector<double> v = agent_action_values(g, uniform, agent.player, agent.type);
    br[agent.player][agent.type] = argmax_lowest(v);
    counts[agent.player][agent.type][br[agent.player][agent.type]] += 1.0;
  }

  std::vector<int> new_br(num_agents);
  for (int iter = 2; iter <= iterations; ++iter) {
    // Accumulate each agent's payoff against the opponents' last best
    // responses; the running sum equals n * (payoff vs the average strategy).
    for (const AgentView& agent : agents) {
      const int i = agent.player;
      std::vector<double>& cum = cumulative[i][agent.type];
      const std::int64_t own_stride = g.actions.strides[i];
      for (std::int64_t c = 0; c < static_cast<std::int64_t>(agent.weights.size()); ++c) {
        const double w = agent.weights[c];
        if (w <= 0.0) continue;
        std::int64_t action_base = 0;
        for (std::size_t k = 0; k < agent.opp_players.size(); ++k) {
          const int j = agent.opp_players[k];
          action_base += static_cast<std::int64_t>(br[j][agent.opp_types[c][k]]) *
                         g.actions.strides[j];
        }
        const double* base =
            &g.payoff[static_cast<std::size_t>(agent.joint_types[c]) * g.actions.total * n];
        for (int a = 0; a < g.action_counts[i]; ++a) {
          cum[a] += w * base[(action_base + a * own_stride) * n + i];
        }
      }
    }
    for (int k = 0; k < num_agents; ++k) {
      new_br[k] = argmax_lowest(cumulative[agents[k].player][agents[k].type]);
    }
    for (int k = 0; k < num_agents; ++k) {
      br[agents[k].player][agents[k].type] = new_br[k];
      counts[agents[k].player][agents[k].type][new_br[k]] += 1.0;
    }
  }

  StageStrategy out;
  out.dist.resize(n);
  for (int i = 0; i < n; ++i) {
    out.dist[i].resize(g.types.sizes[i]);
    for (int t = 0; t < g.types.sizes[i]; ++t) {
      out.dist[i][t].resize(g.action_counts[i]);
      for (int a = 0; a < g.action_counts[i]; ++a) {
        out.dist[i][t][a] = counts[i][t][a] / iterations;
      }
    }
  }
  return out;
}

double stage_epsilon(const StageGame& g, const StageStrategy& strategy) {
  double eps = 0.0;
  for (int i = 0; i < g.num_players; ++i) {
    for (int t = 0; t < g.types.sizes[i]; ++t) {
      const std::vector<double> v = agent_action_values(g, strategy, i, t);
      double current = 0.0;
      for (int a = 0; a < g.action_counts[i]; ++a) current += strategy.dist[i][t][a] * v[a];
      const double best = *std::max_element(v.begin(), v.end());
      eps = std::max(eps, best - current);
    }
  }
  return eps;
}

}  // namespace dsg
