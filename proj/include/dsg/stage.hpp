#pragma once

#include <cstdint>
#include <vector>

#include "dsg/game.hpp"

namespace dsg {

// One-shot Bayesian game at a single state: terminal payoff mass plus
// continuation values folded into a payoff tensor over (jointType,
// jointAction, player).
struct StageGame {
  int state = 0;
  int num_players = 0;
  std::vector<int> action_counts;
  MixedRadix actions;
  MixedRadix types;
  JointTypeBelief belief;
  std::vector<double> payoff;  // [jointType][jointAction][player], flattened

  double at(std::int64_t joint_type, std::int64_t joint_action, int player) const {
    return payoff[(joint_type * actions.total + joint_action) * num_players + player];
  }
};

// Per (player, type) action distributions at one state.
struct StageStrategy {
  // dist[player][type][action]
  std::vector<std::vector<std::vector<double>>> dist;
};

// Builds the stage game at `state`. Continuation values come from `values`:
// state mode uses v_i(s'), type-dependent mode uses v_{i,t}(s') for the
// joint type vector t of the tensor entry.
StageGame build_stage(const GameSpec& spec, int state, const ValueTable& values,
                      const JointTypeBelief& belief);

// Simultaneous-update fictitious play over (player, type) agents. Each agent
// best-responds to the opponents' running average strategies, with opponent
// type vectors weighted by the belief conditioned on the agent's own type.
// Ties break toward the lowest action index; the first best response is
// computed against uniform opponents.
StageStrategy fictitious_play(const StageGame& stage, int iterations);

// Largest gain any (player, type) agent can obtain by deviating from
// `strategy` in the one-shot stage game.
double stage_epsilon(const StageGame& stage, const StageStrategy& strategy);

// Expected payoff of each of the agent's actions against the other players'
// mixed strategies (opponent types weighted by the conditioned belief).
std::vector<double> agent_action_values(const StageGame& stage, const StageStrategy& others,
                                        int player, int type);

// Uniform stage strategy (used as the fictitious play seed).
StageStrategy uniform_stage_strategy(const StageGame& stage);

// Belief over opponents' type combinations conditioned on the agent's own
// type; falls back to the unconditioned opponent marginal when the agent's
// own type has zero marginal mass.
std::vector<double> conditioned_opponent_weights(const JointTypeBelief& belief, int player,
                                                 int type);

}  // namespace dsg
