#pragma once

#include <vector>

#include "dsg/game.hpp"

namespace dsg {

// Unnormalized probability of (types = t AND state reached), per state.
struct ReachMass {
  std::vector<std::vector<double>> mass;  // [state][jointType], nonterminals only
  std::vector<double> total;              // per state
  std::vector<bool> zero_reach;           // states that fell back to the prior
};

struct PropagateResult {
  ReachMass reach;
  std::vector<JointTypeBelief> beliefs;  // per nonterminal state
};

// Pushes `state`'s reach mass one step forward through its transition rows,
// marginalizing the joint action under the per-type strategy at that state.
// `mass` is indexed [state][jointType]; only nonterminal successors receive
// mass. Shared by propagate() and the sequential solver loop.
void push_state_mass(const GameSpec& spec, int state,
                     const std::vector<std::vector<std::vector<double>>>& strategy_at_state,
                     std::vector<std::vector<double>>& mass);

// Bayes propagation in topological order. Beliefs are computed for every
// state up to and including `up_to_state` (a state id; pass the last state in
// topological order for a full pass). Zero-reach states receive the prior and
// are flagged.
PropagateResult propagate(const GameSpec& spec, const StrategyProfile& profile, int up_to_state);

// Beliefs at every state consistent with the previous iteration's profile.
std::vector<JointTypeBelief> stale_beliefs(const GameSpec& spec,
                                           const StrategyProfile& previous_profile);

// Joint-action weights Prod_k strategy[k][t_k][a_k] for one (state, joint
// type); the common inner product of propagation and evaluation.
std::vector<double> joint_action_weights(
    const GameSpec& spec, int state,
    const std::vector<std::vector<std::vector<double>>>& strategy_at_state, std::int64_t joint_type);

}  // namespace dsg
