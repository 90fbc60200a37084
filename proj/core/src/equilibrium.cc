#include "sndg/equilibrium.h"

#include <algorithm>

#include "profile_scan.h"
#include "sndg/arithmetic.h"
#include "sndg/errors.h"

namespace sndg {
namespace {

// Exact distances to `target` under `weight`, nullopt where unreachable.
std::vector<std::optional<Rational>> DistancesTo(
    const Game& game, int target, const std::vector<Rational>& weight) {
  const int n = game.num_vertices();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> settled(n, false);
  dist[target] = Rational();
  for (;;) {
    int next = -1;
    for (int v = 0; v < n; ++v) {
      if (settled[v] || !dist[v]) continue;
      if (next < 0 || *dist[v] < *dist[next]) next = v;
    }
    if (next < 0) break;
    settled[next] = true;
    // Relax every edge that can be traversed into `next`.
    for (int e = 0; e < game.num_edges(); ++e) {
      const Edge& edge = game.edge(e);
      auto relax = [&](int from) {
        if (settled[from]) return;
        Rational candidate = weight[e] + *dist[next];
        if (!dist[from] || candidate < *dist[from]) {
          dist[from] = std::move(candidate);
        }
      };
      if (edge.v == next) relax(edge.u);
      if (!game.directed() && edge.u == next) relax(edge.v);
    }
  }
  return dist;
}

// Depth-first search over tight arcs in edge order; the first complete path
// is the lexicographically smallest shortest simple path.
class TightPathSearch {
 public:
  TightPathSearch(const Game& game, int target,
                  const std::vector<Rational>& weight,
                  const std::vector<std::optional<Rational>>& dist)
      : game_(game),
        target_(target),
        weight_(weight),
        dist_(dist),
        visited_(game.num_vertices(), false) {}

  std::optional<Path> Find(int source) {
    visited_[source] = true;
    if (Visit(source)) return path_;
    return std::nullopt;
  }

 private:
  bool Visit(int v) {
    if (v == target_) return true;
    for (const Arc& arc : game_.arcs(v)) {
      if (visited_[arc.head] || !dist_[arc.head]) continue;
      if (weight_[arc.edge] + *dist_[arc.head] != *dist_[v]) continue;
      visited_[arc.head] = true;
      path_.push_back(arc.edge);
      if (Visit(arc.head)) return true;
      path_.pop_back();
      visited_[arc.head] = false;
    }
    return false;
  }

  const Game& game_;
  int target_;
  const std::vector<Rational>& weight_;
  const std::vector<std::optional<Rational>>& dist_;
  std::vector<bool> visited_;
  Path path_;
};

std::vector<StrategyProfile> Materialize(
    const Game& game, const StrategySpace& space,
    const std::vector<std::uint64_t>& indices) {
  std::vector<StrategyProfile> profiles;
  profiles.reserve(indices.size());
  for (std::uint64_t index : indices) {
    profiles.push_back(space.Profile(game, index));
  }
  return profiles;
}

}  // namespace

Rational DeviationCost(const Game& game, const StrategyProfile& profile,
                       int player, std::span<const int> path) {
  Rational cost;
  for (int e : path) {
    const int others = profile.usage(e) - (profile.Uses(player, e) ? 1 : 0);
    cost += game.edge(e).cost / Rational(others + 1);
  }
  return cost;
}

Path BestResponse(const Game& game, const StrategyProfile& profile,
                  int player) {
  std::vector<Rational> weight(game.num_edges());
  for (int e = 0; e < game.num_edges(); ++e) {
    const int others = profile.usage(e) - (profile.Uses(player, e) ? 1 : 0);
    weight[e] = game.edge(e).cost / Rational(others + 1);
  }
  const Player& p = game.player(player);
  const auto dist = DistancesTo(game, p.target, weight);
  if (!dist[p.source]) {
    throw InternalError("player " + p.id + " has no path to its target");
  }
  auto path = TightPathSearch(game, p.target, weight, dist).Find(p.source);
  if (!path) throw InternalError("no tight path for player " + p.id);
  return *std::move(path);
}

NashVerdict IsNash(const Game& game, const StrategyProfile& profile) {
  NashVerdict verdict;
  for (int i = 0; i < game.num_players(); ++i) {
    Path response = BestResponse(game, profile, i);
    Rational current = PlayerCost(game, profile, i);
    Rational deviation = DeviationCost(game, profile, i, response);
    if (deviation < current) {
      verdict.is_nash = false;
      verdict.player = i;
      verdict.improving_path = std::move(response);
      verdict.current_cost = std::move(current);
      verdict.deviation_cost = std::move(deviation);
      return verdict;
    }
  }
  return verdict;
}

std::vector<StrategyProfile> EnumerateNash(const Game& game,
                                           const ScanSettings& settings) {
  const StrategySpace space = StrategySpace::Build(game);
  internal::ScanOptions options;
  options.optimum = false;
  options.keep_minimizers = false;
  options.workers = settings.workers;
  const auto scan = internal::ScanProfiles(game, space, settings.budget, options);
  return Materialize(game, space, scan.nash);
}

MinimizerSet PotentialMinimizers(const Game& game,
                                 const ScanSettings& settings) {
  const StrategySpace space = StrategySpace::Build(game);
  internal::ScanOptions options;
  options.optimum = false;
  options.keep_nash = false;
  options.workers = settings.workers;
  const auto scan = internal::ScanProfiles(game, space, settings.budget, options);
  if (!scan.minimizers_are_nash) {
    throw InternalError("a potential minimizer failed the Nash test");
  }
  return MinimizerSet{scan.min_potential,
                      Materialize(game, space, scan.minimizers)};
}

DynamicsResult BestResponseDynamics(const Game& game,
                                    const StrategyProfile& start,
                                    std::span<const int> order) {
  std::vector<int> schedule(order.begin(), order.end());
  if (schedule.empty()) {
    for (int i = 0; i < game.num_players(); ++i) schedule.push_back(i);
  }
  std::vector<bool> named(game.num_players(), false);
  for (int i : schedule) {
    if (i < 0 || i >= game.num_players()) {
      throw PreconditionError("schedule names unknown player index " +
                              std::to_string(i));
    }
    named[i] = true;
  }
  if (std::find(named.begin(), named.end(), false) != named.end()) {
    throw PreconditionError("schedule must name every player");
  }

  DynamicsResult result{start, {}};
  Rational phi = Potential(game, result.profile);
  for (bool moved = true; moved;) {
    moved = false;
    for (int i : schedule) {
      Path response = BestResponse(game, result.profile, i);
      Rational old_cost = PlayerCost(game, result.profile, i);
      Rational new_cost = DeviationCost(game, result.profile, i, response);
      if (!(new_cost < old_cost)) continue;
      result.profile = result.profile.WithPath(game, i, std::move(response));
      Rational next_phi = Potential(game, result.profile);
      if (!(next_phi < phi)) {
        throw InternalError("potential did not decrease on an improving move");
      }
      phi = next_phi;
      result.trace.push_back(DynamicsStep{i, std::move(old_cost),
                                          std::move(new_cost), phi});
      moved = true;
    }
  }
  return result;
}

const Rational& EquilibriumReport::PoS() const {
  if (!price_of_stability) throw DegenerateError("optimum has zero cost");
  return *price_of_stability;
}

const Rational& EquilibriumReport::PoA() const {
  if (!price_of_anarchy) throw DegenerateError("optimum has zero cost");
  return *price_of_anarchy;
}

const Rational& EquilibriumReport::POPoA() const {
  if (!potential_optimal_price_of_anarchy) {
    throw DegenerateError("optimum has zero cost");
  }
  return *potential_optimal_price_of_anarchy;
}

EquilibriumReport PriceRatios(const Game& game, const StrategySpace& space,
                              const ScanSettings& settings) {
  internal::ScanOptions options;
  options.workers = settings.workers;
  auto scan = internal::ScanProfiles(game, space, settings.budget, options);
  if (!scan.minimizers_are_nash) {
    throw InternalError("a potential minimizer failed the Nash test");
  }
  if (!scan.optimum || !scan.best_nash) {
    throw InternalError("exhaustive scan found no optimum or equilibrium");
  }
  EquilibriumReport report;
  report.profile_count = scan.profiles;
  report.nash = std::move(scan.nash);
  report.minimizers = std::move(scan.minimizers);
  report.min_potential = scan.min_potential;
  report.optimum = *scan.optimum;
  report.optimum_cost = scan.optimum_cost;
  report.best_nash = *scan.best_nash;
  report.best_nash_cost = scan.best_nash_cost;
  report.worst_nash = *scan.worst_nash;
  report.worst_nash_cost = scan.worst_nash_cost;
  report.worst_minimizer = scan.worst_minimizer;
  report.worst_minimizer_cost = scan.worst_minimizer_cost;
  if (!report.optimum_cost.IsZero()) {
    report.price_of_stability = report.best_nash_cost / report.optimum_cost;
    report.price_of_anarchy = report.worst_nash_cost / report.optimum_cost;
    report.potential_optimal_price_of_anarchy =
        report.worst_minimizer_cost / report.optimum_cost;
  }
  return report;
}

EquilibriumReport PriceRatios(const Game& game, const ScanSettings& settings) {
  return PriceRatios(game, StrategySpace::Build(game), settings);
}

}  // namespace sndg
