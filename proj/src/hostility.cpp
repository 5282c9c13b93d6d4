#include "dsg/hostility.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dsg {

bool HostilityGameParams::countered(int red, int red_move, int blue_move) const {
  const auto& set = counters[red][red_move];
  return std::find(set.begin(), set.end(), blue_move) != set.end();
}

double typed_probability(double p, double own_type, double opponent_type) {
  if (own_type <= 0.0 || opponent_type <= 0.0) {
    throw std::invalid_argument("typed_probability: types must be positive");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("typed_probability: base probability outside [0,1]");
  }
  return std::pow(p, opponent_type / own_type);
}

EncounterOutcome resolve_encounter(const HostilityGameParams& params, int blue_move,
                                   const std::vector<int>& red_moves,
                                   const std::vector<int>& joint_types) {
  const double t_blue = params.type_values[0][joint_types[0]];
  double beta_sum = 0.0, rho_sum = 0.0;
  double no_blue = 1.0, no_red = 1.0;
  for (int j = 0; j < params.num_red; ++j) {
    const int rm = red_moves[j];
    const double t_red = params.type_values[j + 1][joint_types[j + 1]];
    const bool def = params.countered(j, rm, blue_move);
    const double beta = typed_probability(
        def ? params.blue_success_countered[j][blue_move] : params.blue_success_uncountered[j][blue_move],
        t_blue, t_red);
    const double rho = typed_probability(
        def ? params.red_success_countered[j][rm] : params.red_success_uncountered[j][rm],
        t_red, t_blue);
    beta_sum += beta;
    rho_sum += rho;
    no_blue *= 1.0 - beta;
    no_red *= 1.0 - rho;
  }
  EncounterOutcome out;
  if (params.aggregation == EncounterAggregation::mean_success) {
    out.p_blue_win = beta_sum / params.num_red;
    out.p_red_win = rho_sum / params.num_red;
  } else {
    out.p_blue_win = no_red * (1.0 - no_blue);
    out.p_red_win = no_blue * (1.0 - no_red);
  }
  out.p_continue = 1.0 - out.p_blue_win - out.p_red_win;
  if (out.p_continue < -1e-9) {
    std::ostringstream os;
    os << "resolve_encounter: success probabilities exceed 1 for blue move " << blue_move
       << " red moves (";
    for (int j = 0; j < params.num_red; ++j) os << (j ? "," : "") << red_moves[j];
    os << ")";
    throw std::invalid_argument(os.str());
  }
  out.p_continue = std::max(out.p_continue, 0.0);
  return out;
}

std::vector<Violation> validate(const HostilityGameParams& params) {
  std::vector<Violation> out;
  const int n = params.num_players();
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };

  for (int p = 0; p < n; ++p) {
    for (int m = 0; m < params.moves(p); ++m) {
      const double h = params.hostility[p][m];
      if (h <= 0.0) {
        out.push_back({"hostility-nonpositive",
                       "player " + std::to_string(p) + " move " + std::to_string(m)});
      } else if (std::abs(h - std::round(h)) > 1e-9) {
        out.push_back({"hostility-noninteger",
                       "player " + std::to_string(p) + " move " + std::to_string(m)});
      }
    }
    for (double t : params.type_values[p]) {
      if (t <= 0.0) out.push_back({"type-value-nonpositive", "player " + std::to_string(p)});
    }
  }
  for (int j = 0; j < params.num_red; ++j) {
    for (int bm = 0; bm < params.moves(0); ++bm) {
      if (!prob_ok(params.blue_success_countered[j][bm]) ||
          !prob_ok(params.blue_success_uncountered[j][bm])) {
        out.push_back({"probability-range",
                       "blue success, red " + std::to_string(j) + " blue move " + std::to_string(bm)});
      }
    }
    for (int rm = 0; rm < params.moves(j + 1); ++rm) {
      if (!prob_ok(params.red_success_countered[j][rm]) ||
          !prob_ok(params.red_success_uncountered[j][rm])) {
        out.push_back({"probability-range",
                       "red success, red " + std::to_string(j) + " move " + std::to_string(rm)});
      }
    }
  }
  if (params.kinetic_threshold < 1) out.push_back({"threshold", "kinetic threshold must be >= 1"});

  // Typed feasibility under mean aggregation: for every pair encounter and
  // every type combination, blue success + red success must not exceed 1.
  if (params.aggregation == EncounterAggregation::mean_success) {
    for (int j = 0; j < params.num_red; ++j) {
      for (int bm = 0; bm < params.moves(0); ++bm) {
        for (int rm = 0; rm < params.moves(j + 1); ++rm) {
          const bool def = params.countered(j, rm, bm);
          const double b0 = def ? params.blue_success_countered[j][bm]
                                : params.blue_success_uncountered[j][bm];
          const double r0 = def ? params.red_success_countered[j][rm]
                                : params.red_success_uncountered[j][rm];
          for (double tb : params.type_values[0]) {
            for (double tr : params.type_values[j + 1]) {
              if (tb <= 0.0 || tr <= 0.0) continue;
              const double b = typed_probability(std::clamp(b0, 0.0, 1.0), tb, tr);
              const double r = typed_probability(std::clamp(r0, 0.0, 1.0), tr, tb);
              if (b + r > 1.0 + 1e-9) {
                std::ostringstream os;
                os << "red " << j << " blue move " << bm << " red move " << rm << " types (" << tb
                   << "," << tr << ") give " << b + r;
                out.push_back({"aggregation-infeasible", os.str()});
              }
            }
          }
        }
      }
    }
  }
  return out;
}

GameSpec build_game(const HostilityGameParams& params) {
  {
    const auto violations = validate(params);
    if (!violations.empty()) {
      throw std::invalid_argument("build_game: invalid params: " + violations.front().kind + " (" +
                                  violations.front().detail + ")");
    }
  }
  const int n = params.num_players();
  const int K = params.kinetic_threshold;

  GameSpec spec;
  spec.num_players = n;
  spec.type_counts.resize(n);
  for (int p = 0; p < n; ++p) spec.type_counts[p] = static_cast<int>(params.type_values[p].size());
  spec.num_nonterminal = K;
  spec.state_names.reserve(K + 3);
  for (int s = 0; s < K; ++s) spec.state_names.push_back("G" + std::to_string(s));
  spec.state_names.push_back("B");
  spec.state_names.push_back("R");
  spec.state_names.push_back("G" + std::to_string(K));
  spec.topo_order.resize(K);
  for (int s = 0; s < K; ++s) spec.topo_order[s] = s;

  std::vector<int> moves(n);
  for (int p = 0; p < n; ++p) moves[p] = params.moves(p);
  spec.action_counts.assign(K, moves);
  spec.finalize();

  spec.prior.assign(spec.type_radix.total, 1.0 / static_cast<double>(spec.type_radix.total));

  const int blue_win_state = K;
  const int red_win_state = K + 1;
  const int kinetic_state = K + 2;
  spec.terminal_payoff.assign(
      3, std::vector<std::vector<double>>(spec.type_radix.total, std::vector<double>(n, 0.0)));
  for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
    for (int p = 0; p < n; ++p) {
      spec.terminal_payoff[0][t][p] = p == 0 ? params.win_payoff : -params.win_payoff;
      spec.terminal_payoff[1][t][p] = p == 0 ? -params.win_payoff : params.win_payoff;
      spec.terminal_payoff[2][t][p] = params.kinetic_payoff;
    }
  }

  ShiftKernel kernel;
  kernel.direct_terminals = {blue_win_state, red_win_state};
  kernel.overflow_terminal = kinetic_state;
  const MixedRadix actions(moves);
  const std::int64_t rows = spec.type_radix.total * actions.total;
  kernel.terminal_prob.assign(rows * 2, 0.0);
  kernel.continue_prob.assign(rows, 0.0);
  kernel.shift.assign(rows, 0);

  std::vector<int> red_moves(params.num_red);
  for (std::int64_t t = 0; t < spec.type_radix.total; ++t) {
    const std::vector<int> types = spec.type_radix.decompose(t);
    for (std::int64_t a = 0; a < actions.total; ++a) {
      const int blue_move = actions.digit(a, 0);
      double hsum = params.hostility[0][blue_move];
      for (int j = 0; j < params.num_red; ++j) {
        red_moves[j] = actions.digit(a, j + 1);
        hsum += params.hostility[j + 1][red_moves[j]];
      }
      const EncounterOutcome o = resolve_encounter(params, blue_move, red_moves, types);
      const std::int64_t r = t * actions.total + a;
      kernel.terminal_prob[r * 2 + 0] = o.p_blue_win;
      kernel.terminal_prob[r * 2 + 1] = o.p_red_win;
      kernel.continue_prob[r] = o.p_continue;
      kernel.shift[r] = static_cast<int>(std::llround(hsum));
    }
  }
  spec.kernel = std::move(kernel);
  return spec;
}

namespace {

// Bit-stable uniform doubles; distribution classes vary across standard
// library implementations.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int next_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(next_unit(rng) * (hi - lo + 1)) % (hi - lo + 1);
}

double next_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

}  // namespace

HostilityGameParams generate_synthetic(std::uint64_t seed, const SizeProfile& profile) {
  std::mt19937_64 rng(seed);
  HostilityGameParams params;
  params.num_red = profile.num_red;
  params.kinetic_threshold = profile.kinetic_threshold;
  const int n = params.num_players();

  std::vector<int> moves(n);
  for (int p = 0; p < n; ++p) moves[p] = next_int(rng, profile.min_actions, profile.max_actions);

  params.hostility.resize(n);
  for (int p = 0; p < n; ++p) {
    params.hostility[p].resize(moves[p]);
    for (int m = 0; m < moves[p]; ++m) {
      params.hostility[p][m] =
          static_cast<double>(next_int(rng, profile.min_hostility, profile.max_hostility));
    }
  }

  // Type values spaced in [1, max_type_value]; worst strength ratio is
  // max_type_value, so feasibility below assumes success probabilities whose
  // typed adjustments stay jointly below 1 for that ratio.
  params.type_values.resize(n);
  for (int p = 0; p < n; ++p) {
    params.type_values[p].resize(profile.types_per_player);
    for (int t = 0; t < profile.types_per_player; ++t) {
      params.type_values[p][t] =
          profile.types_per_player == 1
              ? 1.0
              : 1.0 + (profile.max_type_value - 1.0) * t / (profile.types_per_player - 1);
    }
  }

  params.counters.resize(params.num_red);
  params.blue_success_countered.resize(params.num_red);
  params.blue_success_uncountered.resize(params.num_red);
  params.red_success_countered.resize(params.num_red);
  params.red_success_uncountered.resize(params.num_red);
  for (int j = 0; j < params.num_red; ++j) {
    params.counters[j].resize(moves[j + 1]);
    for (int rm = 0; rm < moves[j + 1]; ++rm) {
      for (int bm = 0; bm < moves[0]; ++bm) {
        if (next_unit(rng) < profile.counter_density) params.counters[j][rm].push_back(bm);
      }
    }
    params.blue_success_countered[j].resize(moves[0]);
    params.blue_success_uncountered[j].resize(moves[0]);
    for (int bm = 0; bm < moves[0]; ++bm) {
      // Countered favors blue relative to uncountered.
      const double hi = next_in(rng, profile.min_success, profile.max_success);
      const double lo = next_in(rng, profile.min_success, hi);
      params.blue_success_countered[j][bm] = hi;
      params.blue_success_uncountered[j][bm] = lo;
    }
    params.red_success_countered[j].resize(moves[j + 1]);
    params.red_success_uncountered[j].resize(moves[j + 1]);
    for (int rm = 0; rm < moves[j + 1]; ++rm) {
      const double hi = next_in(rng, profile.min_success, profile.max_success);
      const double lo = next_in(rng, profile.min_success, hi);
      params.red_success_uncountered[j][rm] = hi;
      params.red_success_countered[j][rm] = lo;
    }
  }
  return params;
}

}  // namespace dsg
