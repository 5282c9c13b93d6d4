#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dsg {

// Mixed-radix index over per-player digits (player 0 most significant).
// Used for both joint type vectors and joint actions so that every table
// in the library enumerates tuples in the same lexicographic order.
struct MixedRadix {
  std::vector<int> sizes;
  std::vector<std::int64_t> strides;
  std::int64_t total = 1;

  MixedRadix() = default;
  explicit MixedRadix(std::vector<int> digit_sizes);

  int digits() const { return static_cast<int>(sizes.size()); }
  std::int64_t compose(const std::vector<int>& digits_vec) const;
  int digit(std::int64_t index, int pos) const {
    return static_cast<int>((index / strides[pos]) % sizes[pos]);
  }
  std::vector<int> decompose(std::int64_t index) const;
};

// Probability mass over joint type vectors, indexed by the lexicographic
// joint type index of `types`.
struct JointTypeBelief {
  MixedRadix types;
  std::vector<double> mass;

  JointTypeBelief() = default;
  JointTypeBelief(MixedRadix radix, std::vector<double> m)
      : types(std::move(radix)), mass(std::move(m)) {}

  static JointTypeBelief uniform(const MixedRadix& radix);
};

// Per-player marginal distribution of `belief` for `player`.
std::vector<double> marginal(const JointTypeBelief& belief, int player);

// Joint belief formed as the product of independent per-player marginals.
JointTypeBelief product_belief(const std::vector<std::vector<double>>& marginals);

// One (state, player, type) -> action distribution table covering every
// nonterminal state of a game.
struct StrategyProfile {
  // dist[state][player][type][action]
  std::vector<std::vector<std::vector<std::vector<double>>>> dist;
};

enum class ValueMode { state_values, type_dependent };

// Values per (player, state); in type_dependent mode additionally keyed by
// the joint type vector. Terminal states carry their payoffs.
struct ValueTable {
  ValueMode mode = ValueMode::state_values;
  // state mode: values[player][state]
  std::vector<std::vector<double>> values;
  // tdv mode: values_tdv[jointType][player][state]
  std::vector<std::vector<std::vector<double>>> values_tdv;

  std::int64_t nonterminal_entry_count(int num_nonterminal) const;
};

struct TraceRow {
  int outer_iteration = 0;
  double max_strategy_delta = 0.0;
  double max_value_delta = 0.0;
  std::optional<double> epsilon;
  double wall_seconds = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;
};

// One probabilistic successor of a transition row.
struct TransitionEntry {
  int successor = 0;
  double prob = 0.0;
};

// Fully tabulated kernel: rows[state][jointType * A + jointAction].
struct ExplicitKernel {
  std::vector<std::vector<std::vector<TransitionEntry>>> rows;
};

// Kernel shared by every nonterminal state: each (jointType, jointAction)
// row sends fixed probabilities to a fixed list of terminals plus a
// "continue" mass that advances the state index by an integer shift,
// overflowing into a designated terminal. This is the natural compressed
// form for hostility-accumulation games, where rows are state independent.
struct ShiftKernel {
  std::vector<int> direct_terminals;  // global state ids
  int overflow_terminal = 0;          // global state id
  // flattened [jointType][jointAction]:
  std::vector<double> terminal_prob;  // size T*A*direct_terminals.size()
  std::vector<double> continue_prob;  // size T*A
  std::vector<int> shift;             // size T*A, all >= 1
};

// A DAG-structured stochastic game with persistent private types.
// States 0..num_nonterminal-1 are nonterminal; the rest are terminal.
struct GameSpec {
  int num_players = 0;
  std::vector<int> type_counts;                 // per player
  int num_nonterminal = 0;
  std::vector<std::string> state_names;         // all states
  std::vector<int> topo_order;                  // permutation of nonterminals
  std::vector<std::vector<int>> action_counts;  // [nonterminal][player]
  std::vector<double> prior;                    // dense over joint types
  // terminal_payoff[stateId - num_nonterminal][jointType][player]
  std::vector<std::vector<std::vector<double>>> terminal_payoff;
  std::variant<ExplicitKernel, ShiftKernel> kernel;

  MixedRadix type_radix;                 // built by finalize()
  std::vector<MixedRadix> action_radix;  // per nonterminal, built by finalize()

  // Rebuilds the cached radix tables; call after mutating counts.
  void finalize();

  int num_states() const { return static_cast<int>(state_names.size()); }
  int num_terminals() const { return num_states() - num_nonterminal; }
  bool is_terminal(int state) const { return state >= num_nonterminal; }
  int initial_state() const { return topo_order.front(); }
  double payoff_at(int terminal_state, std::int64_t joint_type, int player) const {
    return terminal_payoff[terminal_state - num_nonterminal][joint_type][player];
  }
  JointTypeBelief prior_belief() const { return {type_radix, prior}; }

  // Visits every (successor, prob) pair of one transition row.
  template <class F>
  void for_each_outcome(int state, std::int64_t joint_type, std::int64_t joint_action, F&& f) const {
    if (const auto* ek = std::get_if<ExplicitKernel>(&kernel)) {
      const auto& row = ek->rows[state][joint_type * action_radix[state].total + joint_action];
      for (const auto& e : row) f(e.successor, e.prob);
    } else {
      const auto& sk = std::get<ShiftKernel>(kernel);
      const std::int64_t r = joint_type * action_radix[state].total + joint_action;
      const std::size_t m = sk.direct_terminals.size();
      for (std::size_t k = 0; k < m; ++k) {
        const double p = sk.terminal_prob[r * m + k];
        if (p > 0.0) f(sk.direct_terminals[k], p);
      }
      const double pc = sk.continue_prob[r];
      if (pc > 0.0) {
        const int next = state + sk.shift[r];
        f(next >= num_nonterminal ? sk.overflow_terminal : next, pc);
      }
    }
  }

  // Payoff range over all terminals and players (min, max).
  std::pair<double, double> payoff_bounds() const;
};

struct Violation {
  std::string kind;
  std::string detail;
};

// Checks all GameSpec invariants; returns one entry per violation.
std::vector<Violation> validate(const GameSpec& spec);

// Uniform strategy at every (state, player, type).
StrategyProfile uniform_profile(const GameSpec& spec);

// All-zero value table of the given mode (terminal entries set to payoffs).
ValueTable zero_values(const GameSpec& spec, ValueMode mode);

// L-infinity distance between two profiles of identical shape.
double strategy_delta(const StrategyProfile& a, const StrategyProfile& b);

// L-infinity distance between two value tables of identical shape.
double value_delta(const ValueTable& a, const ValueTable& b);

}  // namespace dsg
