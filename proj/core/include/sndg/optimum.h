#ifndef SNDG_OPTIMUM_H_
#define SNDG_OPTIMUM_H_

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sndg/arithmetic.h"
#include "sndg/equilibrium.h"
#include "sndg/game.h"

namespace sndg {

// Minimum social cost profile. For undirected games the edge union is a
// forest and, among such optima, the profile index is smallest. Directed
// games get the smallest-index minimum-cost profile.
StrategyProfile SocialOptimum(const Game& game,
                              const ScanSettings& settings = {});

bool IsForest(const Game& game, std::span<const int> edges);

// Deletes cycle edges from E(P) until it is a forest (most expensive edge
// lying on some cycle first, ties to the larger edge index) and reroutes
// every player along the unique remaining path. Never increases the cost.
StrategyProfile ForestNormalize(const Game& game,
                                const StrategyProfile& profile);

// Unique-path queries inside an acyclic edge set.
class Forest {
 public:
  // Throws StructureError if `edges` contains a cycle.
  Forest(const Game& game, std::vector<int> edges);

  const std::vector<int>& edges() const { return edges_; }
  bool Contains(int e) const { return member_[e]; }
  // Component id of a vertex touched by the forest, -1 otherwise.
  int component(int v) const { return component_[v]; }
  int num_components() const { return num_components_; }
  // The edge sequence from `from` to `to`, or nullopt across components.
  std::optional<Path> PathBetween(int from, int to) const;

 private:
  std::vector<int> edges_;
  std::vector<bool> member_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<int> component_;
  int num_components_ = 0;
};

struct ForestComponent {
  std::vector<int> vertices;
  std::vector<int> edges;
  // R_m: players with both terminals in this component.
  PlayerSet players = 0;
};

// Structure present when some edge is used by every player: removing
// those edges splits E(O) into the source side and the target side.
struct SharedCore {
  std::vector<int> minus_vertices;
  std::vector<int> plus_vertices;
  std::vector<int> minus_edges;
  std::vector<int> plus_edges;
  // swapped[i]: player i's source lies on the target side, so its terminals
  // are exchanged for the construction.
  std::vector<bool> swapped;
  // first_shared[i][j] / last_shared[i][j]: first and last edge of
  // O_i ∩ O_j along O_i from its (oriented) source.
  std::vector<std::vector<int>> first_shared;
  std::vector<std::vector<int>> last_shared;
};

struct OptimumDecomposition {
  StrategyProfile optimum;
  Forest forest;
  std::vector<ForestComponent> components;
  std::vector<int> component_of_player;
  UsagePartition partition;
  // O^n: edges used by all players.
  std::vector<int> shared_edges;
  std::optional<SharedCore> core;
  // O(x, y) for terminal vertices x, y in a common component.
  std::map<std::pair<int, int>, Path> terminal_paths;

  bool connected() const { return components.size() == 1; }
  // Terminals after the relabeling recorded in `core` (identity when there
  // is no shared core).
  int OrientedSource(const Game& game, int player) const;
  int OrientedTarget(const Game& game, int player) const;
  // O_i walked from its oriented source.
  Path OrientedPath(int player) const;
  // Unique forest path between two vertices of a common component.
  Path TreePath(int from, int to) const;
};

// Throws StructureError if E(O) contains a cycle or the shared core does
// not split into a source side and a target side.
OptimumDecomposition DecomposeOptimum(const Game& game,
                                      const StrategyProfile& optimum);

}  // namespace sndg

#endif  // SNDG_OPTIMUM_H_
