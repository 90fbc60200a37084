#include "sndg/deviation.h"

#include <algorithm>

#include "json.hpp"
#include "sndg/arithmetic.h"
#include "sndg/errors.h"

namespace sndg {
namespace {

Path Reversed(Path path) {
  std::reverse(path.begin(), path.end());
  return path;
}

void Append(std::vector<WalkStep>& walk, const Path& edges, int step) {
  for (int e : edges) walk.push_back(WalkStep{e, step});
}

// Appends `edges` walked from `start`: step `before` until vertex `split`
// is reached, `after` from there on.
void AppendSplit(const Game& game, std::vector<WalkStep>& walk,
                 const Path& edges, int start, int split, int before,
                 int after) {
  int at = start;
  int step = at == split ? after : before;
  for (int e : edges) {
    walk.push_back(WalkStep{e, step});
    at = game.Opposite(e, at);
    if (at == split) step = after;
  }
}

bool Disjoint(const Path& a, const Path& b) {
  for (int e : a) {
    if (std::find(b.begin(), b.end(), e) != b.end()) return false;
  }
  return true;
}

std::vector<int> Edges(const std::vector<WalkStep>& walk) {
  std::vector<int> edges;
  edges.reserve(walk.size());
  for (const WalkStep& s : walk) edges.push_back(s.edge);
  return edges;
}

void RequireUndirected(const Game& game) {
  if (game.directed()) {
    throw PreconditionError(
        "deviation profiles are defined for undirected games only");
  }
}

DeviationRoute PivotRoute(const StrategyProfile& equilibrium, int pivot,
                          int step) {
  DeviationRoute route;
  route.kind = RouteKind::kPivot;
  Append(route.walk, equilibrium.path(pivot), step);
  route.path = equilibrium.path(pivot);
  return route;
}

DeviationRoute FallbackRoute(const OptimumDecomposition& dec, int player) {
  DeviationRoute route;
  route.kind = RouteKind::kFallback;
  Append(route.walk, dec.optimum.path(player), 0);
  route.path = dec.optimum.path(player);
  return route;
}

std::vector<Path> RoutePaths(const std::vector<DeviationRoute>& routes) {
  std::vector<Path> paths;
  for (const DeviationRoute& r : routes) paths.push_back(r.path);
  return paths;
}

// Vertex where walking `path` from `start` first enters edge `e`
// (enter_side) or leaves it (exit side).
int VertexAtEdge(const Game& game, const Path& path, int start, int e,
                 bool exit_side) {
  int at = start;
  for (int f : path) {
    const int next = game.Opposite(f, at);
    if (f == e) return exit_side ? next : at;
    at = next;
  }
  return -1;
}

}  // namespace

const char* RouteKindName(RouteKind kind) {
  switch (kind) {
    case RouteKind::kPivot: return "pivot";
    case RouteKind::kPrime: return "prime";
    case RouteKind::kDoublePrime: return "double-prime";
    case RouteKind::kFallback: return "fallback";
  }
  return "unknown";
}

Path EraseLoops(const Game& game, std::span<const int> walk, int start) {
  std::vector<int> position(game.num_vertices(), -1);
  std::vector<int> vertices{start};
  Path edges;
  position[start] = 0;
  int at = start;
  for (int e : walk) {
    at = game.Opposite(e, at);
    if (position[at] >= 0) {
      const int keep = position[at];
      for (size_t k = keep + 1; k < vertices.size(); ++k) {
        position[vertices[k]] = -1;
      }
      vertices.resize(keep + 1);
      edges.resize(keep);
      continue;
    }
    position[at] = static_cast<int>(vertices.size());
    vertices.push_back(at);
    edges.push_back(e);
  }
  return edges;
}

DeviationProfile BuildCoreDeviation(const Game& game,
                                    const StrategyProfile& equilibrium,
                                    const OptimumDecomposition& dec,
                                    int pivot) {
  RequireUndirected(game);
  if (!dec.core) {
    throw StructureError("no edge is shared by all players in the optimum");
  }
  const SharedCore& core = *dec.core;
  const int n = game.num_players();
  const int pivot_source = dec.OrientedSource(game, pivot);
  const int pivot_target = dec.OrientedTarget(game, pivot);
  const Path pivot_path = core.swapped[pivot]
                              ? Reversed(equilibrium.path(pivot))
                              : equilibrium.path(pivot);
  const Path pivot_optimum = dec.OrientedPath(pivot);

  std::vector<DeviationRoute> routes;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) {
      routes.push_back(PivotRoute(equilibrium, pivot, 3));
      continue;
    }
    const int source = dec.OrientedSource(game, j);
    const int target = dec.OrientedTarget(game, j);
    // The merge point is where O_i enters u_{i,j}; the split point where it
    // leaves v_{i,j}.
    const int merge = VertexAtEdge(game, pivot_optimum, pivot_source,
                                   core.first_shared[pivot][j], false);
    const int split = VertexAtEdge(game, pivot_optimum, pivot_source,
                                   core.last_shared[pivot][j], true);
    DeviationRoute route;
    route.kind = RouteKind::kPrime;
    AppendSplit(game, route.walk, dec.TreePath(source, pivot_source), source,
                merge, 1, 2);
    Append(route.walk, pivot_path, 3);
    AppendSplit(game, route.walk, dec.TreePath(pivot_target, target),
                pivot_target, split, 4, 5);
    route.path = EraseLoops(game, Edges(route.walk), source);
    if (core.swapped[j]) route.path = Reversed(std::move(route.path));
    routes.push_back(std::move(route));
  }
  StrategyProfile profile = StrategyProfile::Create(game, RoutePaths(routes));
  return DeviationProfile{pivot, true, std::move(routes), {},
                          std::move(profile)};
}

DeviationProfile BuildForestDeviation(const Game& game,
                                      const StrategyProfile& equilibrium,
                                      const OptimumDecomposition& dec,
                                      int pivot) {
  RequireUndirected(game);
  const int n = game.num_players();
  const Player& pi = game.player(pivot);
  const Path& pivot_path = equilibrium.path(pivot);

  std::vector<DeviationRoute> routes;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) {
      routes.push_back(PivotRoute(equilibrium, pivot, 2));
      continue;
    }
    const Player& pj = game.player(j);
    if (dec.component_of_player[j] != dec.component_of_player[pivot]) {
      routes.push_back(FallbackRoute(dec, j));
      continue;
    }
    DeviationRoute route;
    if (Disjoint(dec.TreePath(pi.source, pj.source),
                 dec.TreePath(pi.target, pj.target))) {
      route.kind = RouteKind::kPrime;
      Append(route.walk, dec.TreePath(pj.source, pi.source), 1);
      Append(route.walk, pivot_path, 2);
      Append(route.walk, dec.TreePath(pi.target, pj.target), 3);
    } else if (Disjoint(dec.TreePath(pi.source, pj.target),
                        dec.TreePath(pi.target, pj.source))) {
      route.kind = RouteKind::kDoublePrime;
      Append(route.walk, dec.TreePath(pj.source, pi.target), 1);
      Append(route.walk, Reversed(pivot_path), 2);
      Append(route.walk, dec.TreePath(pi.source, pj.target), 3);
    } else {
      routes.push_back(FallbackRoute(dec, j));
      continue;
    }
    route.path = EraseLoops(game, Edges(route.walk), pj.source);
    routes.push_back(std::move(route));
  }

  std::map<PlayerSet, int> detours;
  for (const auto& [users, block] : dec.partition.blocks) {
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (!Contains(users, j) && routes[j].path != dec.optimum.path(j)) {
        ++count;
      }
    }
    detours[users] = count;
  }
  StrategyProfile profile = StrategyProfile::Create(game, RoutePaths(routes));
  return DeviationProfile{pivot, false, std::move(routes), std::move(detours),
                          std::move(profile)};
}

namespace {

// Right-hand side shared by the three verifiers. `pivot_coefficient`
// returns the harmonic index for optimum blocks containing the pivot (or
// nullopt to leave the block out); likewise `other_included` filters the
// blocks without the pivot.
template <typename PivotIndex, typename OtherIncluded>
void AssembleRhs(const Game& game, const UsagePartition& equilibrium_blocks,
                 const UsagePartition& optimum_blocks, int pivot,
                 PivotIndex pivot_index, OtherIncluded other_included,
                 LemmaReport& report) {
  const int n = game.num_players();
  const Rational h_n = HarmonicInt(n);
  for (const auto& [users, block] : equilibrium_blocks.blocks) {
    if (!Contains(users, pivot)) continue;
    report.terms.push_back(LemmaTerm{TermSum::kEquilibrium, users, n,
                                     block.cost, h_n * block.cost});
  }
  for (const auto& [users, block] : optimum_blocks.blocks) {
    if (Contains(users, pivot)) {
      const std::optional<int> index = pivot_index(users);
      if (!index) continue;
      report.terms.push_back(LemmaTerm{TermSum::kPivotOptimum, users, *index,
                                       block.cost,
                                       HarmonicInt(*index) * block.cost});
    } else {
      if (!other_included(users)) continue;
      const int index = SetSize(users);
      report.terms.push_back(LemmaTerm{TermSum::kOtherOptimum, users, index,
                                       block.cost,
                                       HarmonicInt(index) * block.cost});
    }
  }
  for (const LemmaTerm& t : report.terms) report.rhs += t.contribution;
}

void FinishReport(const Game& game, const StrategyProfile& equilibrium,
                  const StrategyProfile& deviation, LemmaReport& report) {
  report.phi_equilibrium = Potential(game, equilibrium);
  report.phi_deviation = Potential(game, deviation);
  report.lower_holds = report.phi_equilibrium <= report.phi_deviation;
  report.upper_holds = report.phi_deviation <= report.rhs;
}

// o_i(U) recounted from the profiles themselves, cross-checked against the
// builder's counters.
std::map<PlayerSet, int> RecountDetours(const Game& game,
                                        const OptimumDecomposition& dec,
                                        const DeviationProfile& deviation,
                                        LemmaReport& report) {
  std::map<PlayerSet, int> detours;
  for (const auto& [users, block] : dec.partition.blocks) {
    int count = 0;
    for (int j = 0; j < game.num_players(); ++j) {
      if (!Contains(users, j) &&
          deviation.profile.path(j) != dec.optimum.path(j)) {
        ++count;
      }
    }
    detours[users] = count;
  }
  if (detours != deviation.detours) {
    report.note = "detour counters disagree with the built profile";
  }
  return detours;
}

}  // namespace

LemmaReport VerifyLemma1(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot) {
  if (!dec.core) {
    throw PreconditionError("lemma for the shared-core case needs O^n nonempty");
  }
  const DeviationProfile deviation =
      BuildCoreDeviation(game, equilibrium, dec, pivot);
  const int n = game.num_players();
  LemmaReport report;
  report.lemma = LemmaKind::kSharedCore;
  report.pivot = pivot;
  AssembleRhs(
      game, ComputeUsagePartition(game, equilibrium), dec.partition, pivot,
      [n](PlayerSet users) -> std::optional<int> {
        return n - SetSize(users);
      },
      [](PlayerSet) { return true; }, report);
  FinishReport(game, equilibrium, deviation.profile, report);
  return report;
}

LemmaReport VerifyLemma2(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot) {
  if (!dec.connected()) {
    throw PreconditionError("lemma for the connected case needs E(O) connected");
  }
  const DeviationProfile deviation =
      BuildForestDeviation(game, equilibrium, dec, pivot);
  const int n = game.num_players();
  LemmaReport report;
  report.lemma = LemmaKind::kConnected;
  report.pivot = pivot;
  const auto detours = RecountDetours(game, dec, deviation, report);
  for (const auto& [users, count] : detours) {
    if (count > n - SetSize(users)) report.detour_bound_holds = false;
  }
  AssembleRhs(
      game, ComputeUsagePartition(game, equilibrium), dec.partition, pivot,
      [&](PlayerSet users) -> std::optional<int> {
        return detours.at(users);
      },
      [](PlayerSet) { return true; }, report);
  FinishReport(game, equilibrium, deviation.profile, report);
  return report;
}

LemmaReport VerifyLemma3(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot) {
  const DeviationProfile deviation =
      BuildForestDeviation(game, equilibrium, dec, pivot);
  LemmaReport report;
  report.lemma = LemmaKind::kForest;
  report.pivot = pivot;
  const auto detours = RecountDetours(game, dec, deviation, report);
  const PlayerSet pivot_group =
      dec.components[dec.component_of_player[pivot]].players;
  auto within = [](PlayerSet users, PlayerSet group) {
    return (users & ~group) == 0;
  };
  // The detour bound is read with the pivot's player group R_k.
  for (const auto& [users, count] : detours) {
    if (Contains(users, pivot) && within(users, pivot_group) &&
        count > SetSize(pivot_group) - SetSize(users)) {
      report.detour_bound_holds = false;
    }
  }
  AssembleRhs(
      game, ComputeUsagePartition(game, equilibrium), dec.partition, pivot,
      [&](PlayerSet users) -> std::optional<int> {
        if (!within(users, pivot_group)) return std::nullopt;
        return detours.at(users);
      },
      [&](PlayerSet users) {
        for (const ForestComponent& c : dec.components) {
          if (within(users, c.players)) return true;
        }
        return false;
      },
      report);
  FinishReport(game, equilibrium, deviation.profile, report);
  return report;
}

std::vector<LemmaReport> VerifyApplicableLemmas(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, int pivot) {
  std::vector<LemmaReport> reports;
  if (dec.core) reports.push_back(VerifyLemma1(game, equilibrium, dec, pivot));
  if (dec.connected()) {
    reports.push_back(VerifyLemma2(game, equilibrium, dec, pivot));
  }
  reports.push_back(VerifyLemma3(game, equilibrium, dec, pivot));
  return reports;
}

namespace {

const char* TermSumName(TermSum sum) {
  switch (sum) {
    case TermSum::kEquilibrium: return "equilibrium";
    case TermSum::kPivotOptimum: return "pivot-optimum";
    case TermSum::kOtherOptimum: return "other-optimum";
  }
  return "unknown";
}

nlohmann::ordered_json PlayerIds(const Game& game, PlayerSet users) {
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    if (Contains(users, i)) ids.push_back(game.player(i).id);
  }
  return ids;
}

}  // namespace

std::string LemmaReportToJson(const Game& game, const LemmaReport& report) {
  nlohmann::ordered_json out;
  out["lemma"] = static_cast<int>(report.lemma);
  out["pivot"] = game.player(report.pivot).id;
  out["phi_equilibrium"] = report.phi_equilibrium.ToString();
  out["phi_deviation"] = report.phi_deviation.ToString();
  out["rhs"] = report.rhs.ToString();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const LemmaTerm& t : report.terms) {
    terms.push_back({{"sum", TermSumName(t.sum)},
                     {"users", PlayerIds(game, t.users)},
                     {"harmonic_index", t.harmonic_index},
                     {"block_cost", t.block_cost.ToString()},
                     {"contribution", t.contribution.ToString()}});
  }
  out["terms"] = std::move(terms);
  out["lower_holds"] = report.lower_holds;
  out["upper_holds"] = report.upper_holds;
  out["detour_bound_holds"] = report.detour_bound_holds;
  if (!report.note.empty()) out["note"] = report.note;
  out["verdict"] = report.holds() ? "PASS" : "FAIL";
  return out.dump();
}

void RequireHolds(const Game& game, const LemmaReport& report) {
  if (!report.holds()) {
    throw VerificationError("lemma inequality violated: " +
                            LemmaReportToJson(game, report));
  }
}

const char* TraversalCaseName(TraversalCase c) {
  switch (c) {
    case TraversalCase::kPivotOutsideMemberInside:
      return "pivot-outside/member-inside";
    case TraversalCase::kBothOutside: return "both-outside";
    case TraversalCase::kBothInside: return "both-inside";
    case TraversalCase::kPivotInsideDetour: return "pivot-inside/detour";
    case TraversalCase::kPivotInsideFallback: return "pivot-inside/fallback";
  }
  return "unknown";
}

TraversalVerdict ClassifyEdgeTraversal(const OptimumDecomposition& dec, int e,
                                       PlayerSet users, int pivot, int player,
                                       RouteKind kind) {
  if (!dec.forest.Contains(e) || dec.optimum.users(e) != users) {
    throw PreconditionError("edge is not in the given optimum block");
  }
  const bool pivot_in = Contains(users, pivot);
  const bool player_in = Contains(users, player);
  if (!pivot_in && player_in) {
    return {TraversalCase::kPivotOutsideMemberInside, true};
  }
  if (!pivot_in) return {TraversalCase::kBothOutside, false};
  if (player_in) return {TraversalCase::kBothInside, false};
  if (kind == RouteKind::kFallback) {
    return {TraversalCase::kPivotInsideFallback, false};
  }
  return {TraversalCase::kPivotInsideDetour, true};
}

std::vector<DisciplineBreach> CheckTraversalDiscipline(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, const DeviationProfile& deviation) {
  std::vector<DisciplineBreach> breaches;
  const int pivot = deviation.pivot;
  for (int j = 0; j < game.num_players(); ++j) {
    const DeviationRoute& route = deviation.routes[j];
    for (int e : route.path) {
      if (!dec.forest.Contains(e) || equilibrium.Uses(pivot, e)) continue;
      const TraversalVerdict verdict = ClassifyEdgeTraversal(
          dec, e, dec.optimum.users(e), pivot, j, route.kind);
      if (!verdict.may_traverse) {
        breaches.push_back(DisciplineBreach{
            j, e, std::string("traversed in case ") +
                      TraversalCaseName(verdict.label)});
      }
    }
  }
  return breaches;
}

std::vector<DisciplineBreach> CheckCoreWalkClasses(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, const DeviationProfile& deviation) {
  std::vector<DisciplineBreach> breaches;
  const int pivot = deviation.pivot;
  for (int j = 0; j < game.num_players(); ++j) {
    for (const WalkStep& s : deviation.routes[j].walk) {
      bool allowed = false;
      const PlayerSet users = dec.optimum.users(s.edge);
      switch (s.step) {
        case 1:
        case 5:
          allowed = users != 0 && !Contains(users, pivot) && Contains(users, j);
          break;
        case 2:
        case 4:
          allowed = users != 0 && Contains(users, pivot) && !Contains(users, j);
          break;
        case 3:
          allowed = equilibrium.Uses(pivot, s.edge);
          break;
        default:
          allowed = false;
      }
      if (!allowed) {
        breaches.push_back(DisciplineBreach{
            j, s.edge, "step " + std::to_string(s.step) + " uses edge " +
                           game.edge(s.edge).id + " outside its class"});
      }
    }
  }
  return breaches;
}

}  // namespace sndg
