#include "dsg/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsg {

namespace {
constexpr double kTransitionTol = 1e-9;
constexpr double kBeliefTol = 1e-12;
}  // namespace

MixedRadix::MixedRadix(std::vector<int> digit_sizes) : sizes(std::move(digit_sizes)) {
  strides.assign(sizes.size(), 1);
  for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * sizes[i + 1];
  }
  total = sizes.empty() ? 1 : strides[0] * sizes[0];
}

std::int64_t MixedRadix::compose(const std::vector<int>& digits_vec) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) idx += digits_vec[i] * strides[i];
  return idx;
}

std::vector<int> MixedRadix::decompose(std::int64_t index) const {
  std::vector<int> out(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = digit(index, static_cast<int>(i));
  return out;
}

JointTypeBelief JointTypeBelief::uniform(const MixedRadix& radix) {
  return {radix, std::vector<double>(radix.total, 1.0 / static_cast<double>(radix.total))};
}

std::vector<double> marginal(const JointTypeBelief& belief, int player) {
  if (player < 0 || player >= belief.types.digits()) {
    throw std::invalid_argument("marginal: unknown player " + std::to_string(player));
  }
  std::vector<double> out(belief.types.sizes[player], 0.0);
  for (std::int64_t t = 0; t < belief.types.total; ++t) {
    out[belief.types.digit(t, player)] += belief.mass[t];
  }
  return out;
}

JointTypeBelief product_belief(const std::vector<std::vector<double>>& marginals) {
  std::vector<int> sizes;
  sizes.reserve(marginals.size());
  for (const auto& m : marginals) sizes.push_back(static_cast<int>(m.size()));
  MixedRadix radix(std::move(sizes));
  std::vector<double> mass(radix.total, 1.0);
  for (std::int64_t t = 0; t < radix.total; ++t) {
    for (int p = 0; p < radix.digits(); ++p) mass[t] *= marginals[p][radix.digit(t, p)];
  }
  return {std::move(radix), std::move(mass)};
}

std::int64_t ValueTable::nonterminal_entry_count(int num_nonterminal) const {
  if (mode == ValueMode::state_values) {
    return static_cast<std::int64_t>(values.size()) * num_nonterminal;
  }
  std::int64_t count = 0;
  for (const auto& per_type : values_tdv) {
    count += static_cast<std::int64_t>(per_type.size()) * num_nonterminal;
  }
  return count;
}

void GameSpec::finalize() {
  type_radix = MixedRadix(type_counts);
  action_radix.clear();
  action_radix.reserve(action_counts.size());
  for (const auto& counts : action_counts) action_radix.emplace_back(counts);
}

std::pair<double, double> GameSpec::payoff_bounds() const {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& per_term : terminal_payoff) {
    for (const auto& per_type : per_term) {
      for (double v : per_type) {
        if (first) {
          lo = hi = v;
          first = false;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
  }
  return {lo, hi};
}

namespace {

std::string row_label(const GameSpec& spec, int state, std::int64_t t, std::int64_t a) {
  std::ostringstream os;
  os << "state " << spec.state_names[state] << " jointType " << t << " jointAction " << a;
  return os.str();
}

void check_row_sum(const GameSpec& spec, int state, std::int64_t t, std::int64_t a, double sum,
                   bool has_negative, std::vector<Violation>& out) {
  if (has_negative) {
    out.push_back({"transition-negative", row_label(spec, state, t, a)});
  }
  if (std::abs(sum - 1.0) > kTransitionTol) {
    std::ostringstream os;
    os << row_label(spec, state, t, a) << " sums to " << sum;
    out.push_back({"transition-normalization", os.str()});
  }
}

}  // namespace

std::vector<Violation> validate(const GameSpec& spec) {
  std::vector<Violation> out;

  // Topological order must be a permutation of the nonterminals.
  std::vector<int> position(spec.num_states(), -1);
  if (static_cast<int>(spec.topo_order.size()) != spec.num_nonterminal) {
    out.push_back({"topo-order", "topo_order size does not match nonterminal count"});
  }
  for (std::size_t i = 0; i < spec.topo_order.size(); ++i) {
    const int s = spec.topo_order[i];
    if (s < 0 || s >= spec.num_nonterminal || position[s] != -1) {
      out.push_back({"topo-order", "invalid or duplicate entry " + std::to_string(s)});
      continue;
    }
    position[s] = static_cast<int>(i);
  }

  // Prior.
  double prior_sum = 0.0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(spec.prior.size()); ++t) {
    if (spec.prior[t] < 0.0) out.push_back({"prior-negative", "jointType " + std::to_string(t)});
    prior_sum += spec.prior[t];
  }
  if (static_cast<std::int64_t>(spec.prior.size()) != spec.type_radix.total) {
    out.push_back({"prior-support", "prior size does not match joint type count"});
  } else if (std::abs(prior_sum - 1.0) > kBeliefTol) {
    out.push_back({"prior-normalization", "prior sums to " + std::to_string(prior_sum)});
  }

  // Transition rows: normalization, nonnegativity, DAG property.
  if (const auto* ek = std::get_if<ExplicitKernel>(&spec.kernel)) {
    for (int s = 0; s < spec.num_nonterminal; ++s) {
      const std::int64_t num_actions = spec.action_radix[s].total;
      for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
        for (std::int64_t a = 0; a < num_actions; ++a) {
          const auto& row = ek->rows[s][t * num_actions + a];
          double sum = 0.0;
          bool neg = false;
          for (const auto& e : row) {
            sum += e.prob;
            neg = neg || e.prob < 0.0;
            if (e.prob > 0.0 && !spec.is_terminal(e.successor) &&
                position[e.successor] <= position[s]) {
              out.push_back({"dag-order", row_label(spec, s, t, a) + " reaches " +
                                              spec.state_names[e.successor]});
            }
          }
          check_row_sum(spec, s, t, a, sum, neg, out);
        }
      }
    }
  } else {
    // Shared rows: validate once, then check the shift keeps every state
    // inside the DAG (shift >= 1 implies strictly-later successors for the
    // canonical index order; a custom topo order must agree).
    const auto& sk = std::get<ShiftKernel>(spec.kernel);
    const std::int64_t num_actions = spec.action_radix.empty() ? 0 : spec.action_radix[0].total;
    const std::size_t m = sk.direct_terminals.size();
    for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
      for (std::int64_t a = 0; a < num_actions; ++a) {
        const std::int64_t r = t * num_actions + a;
        double sum = sk.continue_prob[r];
        bool neg = sk.continue_prob[r] < 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          sum += sk.terminal_prob[r * m + k];
          neg = neg || sk.terminal_prob[r * m + k] < 0.0;
        }
        check_row_sum(spec, 0, t, a, sum, neg, out);
        if (sk.shift[r] < 1 && sk.continue_prob[r] > 0.0) {
          out.push_back({"dag-order", row_label(spec, 0, t, a) + " has nonpositive shift"});
        }
      }
    }
    for (int s = 0; s + 1 < spec.num_nonterminal; ++s) {
      if (position[s] >= 0 && position[s + 1] >= 0 && position[s] > position[s + 1]) {
        out.push_back({"topo-order",
                       "shift kernel requires index-increasing order, violated at state " +
                           spec.state_names[s]});
      }
    }
  }

  // Terminal payoffs must be finite.
  for (int s = spec.num_nonterminal; s < spec.num_states(); ++s) {
    for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
      for (int i = 0; i < spec.num_players; ++i) {
        if (!std::isfinite(spec.payoff_at(s, t, i))) {
          out.push_back({"payoff-nonfinite", "terminal " + spec.state_names[s] + " player " +
                                                 std::to_string(i)});
        }
      }
    }
  }
  return out;
}

StrategyProfile uniform_profile(const GameSpec& spec) {
  StrategyProfile profile;
  profile.dist.resize(spec.num_nonterminal);
  for (int s = 0; s < spec.num_nonterminal; ++s) {
    profile.dist[s].resize(spec.num_players);
    for (int p = 0; p < spec.num_players; ++p) {
      const int a = spec.action_counts[s][p];
      profile.dist[s][p].assign(spec.type_counts[p],
                                std::vector<double>(a, 1.0 / static_cast<double>(a)));
    }
  }
  return profile;
}

ValueTable zero_values(const GameSpec& spec, ValueMode mode) {
  ValueTable table;
  table.mode = mode;
  if (mode == ValueMode::state_values) {
    table.values.assign(spec.num_players, std::vector<double>(spec.num_states(), 0.0));
    for (int s = spec.num_nonterminal; s < spec.num_states(); ++s) {
      for (int i = 0; i < spec.num_players; ++i) {
        // Convention for display: prior-weighted payoff (exact when the
        // terminal payoff is type independent).
        double v = 0.0;
        for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
          v += spec.prior[t] * spec.payoff_at(s, t, i);
        }
        table.values[i][s] = v;
      }
    }
  } else {
    table.values_tdv.assign(
        spec.type_radix.total,
        std::vector<std::vector<double>>(spec.num_players,
                                         std::vector<double>(spec.num_states(), 0.0)));
    for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
      for (int s = spec.num_nonterminal; s < spec.num_states(); ++s) {
        for (int i = 0; i < spec.num_players; ++i) {
          table.values_tdv[t][i][s] = spec.payoff_at(s, t, i);
        }
      }
    }
  }
  return table;
}

double strategy_delta(const StrategyProfile& a, const StrategyProfile& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.dist.size(); ++s) {
    for (std::size_t p = 0; p < a.dist[s].size(); ++p) {
      for (std::size_t t = 0; t < a.dist[s][p].size(); ++t) {
        for (std::size_t k = 0; k < a.dist[s][p][t].size(); ++k) {
          d = std::max(d, std::abs(a.dist[s][p][t][k] - b.dist[s][p][t][k]));
        }
      }
    }
  }
  return d;
}

double value_delta(const ValueTable& a, const ValueTable& b) {
  double d = 0.0;
  if (a.mode == ValueMode::state_values) {
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      for (std::size_t s = 0; s < a.values[i].size(); ++s) {
        d = std::max(d, std::abs(a.values[i][s] - b.values[i][s]));
      }
    }
  } else {
    for (std::size_t t = 0; t < a.values_tdv.size(); ++t) {
      for (std::size_t i = 0; i < a.values_tdv[t].size(); ++i) {
        for (std::size_t s = 0; s < a.values_tdv[t][i].size(); ++s) {
          d = std::max(d, std::abs(a.values_tdv[t][i][s] - b.values_tdv[t][i][s]));
        }
      }
    }
  }
  return d;
}

}  // namespace dsg
