#pragma once

#include <cstdint>
#include <vector>

#include "dsg/game.hpp"

namespace dsg {

// How per-red success probabilities combine into joint win probabilities
// when several red players share the confrontation.
enum class EncounterAggregation {
  mean_success,      // arithmetic mean of per-red probabilities
  independent_draw,  // independent per-pair events; a side wins iff it
                     // scores at least one success and concedes none
};

// Parameters of a hostility game: player 0 is blue, players 1..num_red are
// red. Indices into probability tables are 0-based move indices.
struct HostilityGameParams {
  int num_red = 3;
  // hostility[player][move] > 0, integer valued
  std::vector<std::vector<double>> hostility;
  // counters[red][red_move] = blue moves that counter that red move
  std::vector<std::vector<std::vector<int>>> counters;
  // [red][blue_move]: probability of blue success given countered / uncountered
  std::vector<std::vector<double>> blue_success_countered;
  std::vector<std::vector<double>> blue_success_uncountered;
  // [red][red_move]: probability of red success given countered / uncountered
  std::vector<std::vector<double>> red_success_countered;
  std::vector<std::vector<double>> red_success_uncountered;
  int kinetic_threshold = 300;  // K
  double win_payoff = 100.0;
  double kinetic_payoff = -200.0;
  // type_values[player][type] > 0; larger means stronger
  std::vector<std::vector<double>> type_values;
  EncounterAggregation aggregation = EncounterAggregation::mean_success;

  int num_players() const { return num_red + 1; }
  int moves(int player) const { return static_cast<int>(hostility[player].size()); }
  bool countered(int red, int red_move, int blue_move) const;
};

// Success probability adjusted for the encounter's relative strength:
// p ** (opponent_type / own_type).
double typed_probability(double p, double own_type, double opponent_type);

struct EncounterOutcome {
  double p_blue_win = 0.0;
  double p_red_win = 0.0;
  double p_continue = 0.0;
};

// Resolves one confrontation round given each player's move and type index.
EncounterOutcome resolve_encounter(const HostilityGameParams& params, int blue_move,
                                   const std::vector<int>& red_moves,
                                   const std::vector<int>& joint_types);

// Parameter-level invariants (positivity, probability ranges, typed
// feasibility of the aggregation).
std::vector<Violation> validate(const HostilityGameParams& params);

// Materializes the stochastic game: nonterminals G_0..G_{K-1} plus
// terminals B, R and the kinetic state G_K.
GameSpec build_game(const HostilityGameParams& params);

struct SizeProfile {
  int num_red = 3;
  int min_actions = 7;
  int max_actions = 10;
  int types_per_player = 2;
  int kinetic_threshold = 300;
  int min_hostility = 1;
  int max_hostility = 3;
  double min_success = 0.05;
  double max_success = 0.45;
  double counter_density = 0.5;
  double max_type_value = 2.0;
};

// Deterministic synthetic instance generator (the published game's
// parameter tables are not public).
HostilityGameParams generate_synthetic(std::uint64_t seed, const SizeProfile& profile = {});

}  // namespace dsg
