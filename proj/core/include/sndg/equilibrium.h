#ifndef SNDG_EQUILIBRIUM_H_
#define SNDG_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sndg/enumeration.h"
#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg {

// cost_i after player i alone switches to `path`: sum of c_e/(k_e^{-i}+1).
Rational DeviationCost(const Game& game, const StrategyProfile& profile,
                       int player, std::span<const int> path);

// Cheapest s_i-t_i path against the other players' fixed choices: a
// shortest path under weights c_e/(k_e^{-i}+1), compared exactly. Among
// equally cheap paths the lexicographically smallest edge sequence wins.
Path BestResponse(const Game& game, const StrategyProfile& profile,
                  int player);

struct NashVerdict {
  bool is_nash = true;
  // First player (by index) with a strictly improving deviation.
  std::optional<int> player;
  Path improving_path;
  Rational current_cost;
  Rational deviation_cost;
};

// Strict-improvement test: checks each player's best response.
NashVerdict IsNash(const Game& game, const StrategyProfile& profile);

struct ScanSettings {
  std::uint64_t budget = kDefaultProfileBudget;
  // Threads scanning disjoint blocks of the profile space.
  int workers = 1;
};

// All pure Nash equilibria, in profile-index order.
std::vector<StrategyProfile> EnumerateNash(const Game& game,
                                           const ScanSettings& settings = {});

struct MinimizerSet {
  Rational potential;
  std::vector<StrategyProfile> profiles;  // profile-index order
};

// Every global minimizer of the potential. Each is verified to be a Nash
// equilibrium; a failure raises InternalError.
MinimizerSet PotentialMinimizers(const Game& game,
                                 const ScanSettings& settings = {});

struct DynamicsStep {
  int player = 0;
  Rational old_cost;
  Rational new_cost;
  Rational potential;  // after the move
};

struct DynamicsResult {
  StrategyProfile profile;
  std::vector<DynamicsStep> trace;
};

// Round-robin best-response dynamics following `order` (which must name
// every player; empty means 0..n-1). A player moves only on strict
// improvement. Stops after a full pass without moves.
DynamicsResult BestResponseDynamics(const Game& game,
                                    const StrategyProfile& start,
                                    std::span<const int> order = {});

struct EquilibriumReport {
  std::uint64_t profile_count = 0;
  // Profile indices, ascending.
  std::vector<std::uint64_t> nash;
  std::vector<std::uint64_t> minimizers;
  Rational min_potential;

  std::uint64_t optimum = 0;
  Rational optimum_cost;
  std::uint64_t best_nash = 0;
  Rational best_nash_cost;
  std::uint64_t worst_nash = 0;
  Rational worst_nash_cost;
  // The canonical potential minimizer is minimizers.front().
  std::uint64_t worst_minimizer = 0;
  Rational worst_minimizer_cost;

  // Undefined (nullopt) when the optimum has cost zero.
  std::optional<Rational> price_of_stability;
  std::optional<Rational> price_of_anarchy;
  std::optional<Rational> potential_optimal_price_of_anarchy;

  bool ratios_defined() const { return price_of_stability.has_value(); }
  // Throw DegenerateError when the ratios are undefined.
  const Rational& PoS() const;
  const Rational& PoA() const;
  const Rational& POPoA() const;
};

// Exhaustive scan computing the equilibrium set, the potential minimizers,
// the optimum (with acyclic union when undirected) and the three ratios.
EquilibriumReport PriceRatios(const Game& game, const StrategySpace& space,
                              const ScanSettings& settings = {});
EquilibriumReport PriceRatios(const Game& game,
                              const ScanSettings& settings = {});

}  // namespace sndg

#endif  // SNDG_EQUILIBRIUM_H_
