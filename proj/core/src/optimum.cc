#include "sndg/optimum.h"

#include <algorithm>
#include <numeric>
#include <queue>

#include "profile_scan.h"
#include "sndg/errors.h"

namespace sndg {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// True iff u and v are connected in `edges` without using `skip`.
bool ConnectedWithout(const Game& game, const std::vector<int>& edges,
                      int skip, int u, int v) {
  DisjointSets sets(game.num_vertices());
  for (int e : edges) {
    if (e != skip) sets.Union(game.edge(e).u, game.edge(e).v);
  }
  return sets.Find(u) == sets.Find(v);
}

// Connected components of the graph (vertices, edges), labelled over the
// vertices incident to `edges`; others get -1.
std::vector<int> LabelComponents(const Game& game,
                                 const std::vector<int>& edges, int* count) {
  std::vector<std::vector<int>> adjacency(game.num_vertices());
  std::vector<int> label(game.num_vertices(), -1);
  std::vector<bool> touched(game.num_vertices(), false);
  for (int e : edges) {
    adjacency[game.edge(e).u].push_back(game.edge(e).v);
    adjacency[game.edge(e).v].push_back(game.edge(e).u);
    touched[game.edge(e).u] = touched[game.edge(e).v] = true;
  }
  *count = 0;
  for (int start = 0; start < game.num_vertices(); ++start) {
    if (!touched[start] || label[start] >= 0) continue;
    std::queue<int> frontier;
    label[start] = *count;
    frontier.push(start);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : adjacency[v]) {
        if (label[w] < 0) {
          label[w] = *count;
          frontier.push(w);
        }
      }
    }
    ++*count;
  }
  return label;
}

Path Reversed(Path path) {
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

StrategyProfile SocialOptimum(const Game& game, const ScanSettings& settings) {
  const StrategySpace space = StrategySpace::Build(game);
  internal::ScanOptions options;
  options.nash = false;
  options.keep_nash = false;
  options.keep_minimizers = false;
  options.workers = settings.workers;
  const auto scan =
      internal::ScanProfiles(game, space, settings.budget, options);
  if (!scan.optimum) throw InternalError("no optimum found");
  return space.Profile(game, *scan.optimum);
}

bool IsForest(const Game& game, std::span<const int> edges) {
  DisjointSets sets(game.num_vertices());
  for (int e : edges) {
    if (!sets.Union(game.edge(e).u, game.edge(e).v)) return false;
  }
  return true;
}

StrategyProfile ForestNormalize(const Game& game,
                                const StrategyProfile& profile) {
  if (game.directed()) {
    throw PreconditionError("forest normalization needs an undirected game");
  }
  std::vector<int> edges = profile.UsedEdges();
  for (;;) {
    // Edges on some cycle are exactly those whose endpoints stay connected
    // without them.
    int victim = -1;
    for (int e : edges) {
      if (!ConnectedWithout(game, edges, e, game.edge(e).u, game.edge(e).v)) {
        continue;
      }
      if (victim < 0 || game.edge(victim).cost < game.edge(e).cost ||
          (game.edge(victim).cost == game.edge(e).cost && victim < e)) {
        victim = e;
      }
    }
    if (victim < 0) break;
    edges.erase(std::find(edges.begin(), edges.end(), victim));
  }
  const Forest forest(game, edges);
  std::vector<Path> paths;
  for (int i = 0; i < game.num_players(); ++i) {
    auto path = forest.PathBetween(game.player(i).source, game.player(i).target);
    if (!path) {
      throw InternalError("rerouting failed for player " + game.player(i).id);
    }
    paths.push_back(*std::move(path));
  }
  return StrategyProfile::Create(game, std::move(paths));
}

Forest::Forest(const Game& game, std::vector<int> edges)
    : edges_(std::move(edges)),
      member_(game.num_edges(), false),
      adjacency_(game.num_vertices()) {
  std::sort(edges_.begin(), edges_.end());
  if (!IsForest(game, edges_)) {
    throw StructureError("edge set contains a cycle");
  }
  for (int e : edges_) {
    member_[e] = true;
    adjacency_[game.edge(e).u].push_back(Arc{e, game.edge(e).v});
    adjacency_[game.edge(e).v].push_back(Arc{e, game.edge(e).u});
  }
  component_ = LabelComponents(game, edges_, &num_components_);
}

std::optional<Path> Forest::PathBetween(int from, int to) const {
  if (from == to) return Path{};
  if (component_[from] < 0 || component_[from] != component_[to]) {
    return std::nullopt;
  }
  std::vector<int> via(adjacency_.size(), -1);
  std::vector<int> previous(adjacency_.size(), -1);
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<int> frontier;
  seen[from] = true;
  frontier.push(from);
  while (!frontier.empty() && !seen[to]) {
    const int v = frontier.front();
    frontier.pop();
    for (const Arc& arc : adjacency_[v]) {
      if (seen[arc.head]) continue;
      seen[arc.head] = true;
      via[arc.head] = arc.edge;
      previous[arc.head] = v;
      frontier.push(arc.head);
    }
  }
  Path path;
  for (int v = to; v != from; v = previous[v]) path.push_back(via[v]);
  return Reversed(std::move(path));
}

int OptimumDecomposition::OrientedSource(const Game& game, int player) const {
  const Player& p = game.player(player);
  return core && core->swapped[player] ? p.target : p.source;
}

int OptimumDecomposition::OrientedTarget(const Game& game, int player) const {
  const Player& p = game.player(player);
  return core && core->swapped[player] ? p.source : p.target;
}

Path OptimumDecomposition::OrientedPath(int player) const {
  const Path& path = optimum.path(player);
  return core && core->swapped[player] ? Reversed(path) : path;
}

Path OptimumDecomposition::TreePath(int from, int to) const {
  if (const auto it = terminal_paths.find({from, to});
      it != terminal_paths.end()) {
    return it->second;
  }
  auto path = forest.PathBetween(from, to);
  if (!path) throw StructureError("vertices lie in different components");
  return *std::move(path);
}

OptimumDecomposition DecomposeOptimum(const Game& game,
                                      const StrategyProfile& optimum) {
  const int n = game.num_players();
  OptimumDecomposition dec{optimum, Forest(game, optimum.UsedEdges()),
                           {}, {}, ComputeUsagePartition(game, optimum),
                           {}, std::nullopt, {}};
  const Forest& forest = dec.forest;

  dec.components.resize(forest.num_components());
  for (int v = 0; v < game.num_vertices(); ++v) {
    if (forest.component(v) >= 0) {
      dec.components[forest.component(v)].vertices.push_back(v);
    }
  }
  for (int e : forest.edges()) {
    dec.components[forest.component(game.edge(e).u)].edges.push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    const int m = forest.component(game.player(i).source);
    dec.component_of_player.push_back(m);
    dec.components[m].players |= Singleton(i);
  }

  for (int e : forest.edges()) {
    if (optimum.users(e) == AllPlayers(n)) dec.shared_edges.push_back(e);
  }

  if (!dec.shared_edges.empty()) {
    std::vector<int> rest;
    for (int e : forest.edges()) {
      if (optimum.users(e) != AllPlayers(n)) rest.push_back(e);
    }
    // Sides are labelled over the forest's vertex set; vertices lying only
    // on shared edges stay unlabelled.
    int count = 0;
    std::vector<int> side = LabelComponents(game, rest, &count);
    int next_label = count;
    for (int v = 0; v < game.num_vertices(); ++v) {
      if (forest.component(v) >= 0 && side[v] < 0) side[v] = next_label++;
    }
    const int minus = side[game.player(0).source];
    const int plus = side[game.player(0).target];
    if (minus == plus) {
      throw StructureError("shared edges do not separate player " +
                           game.player(0).id + "'s terminals");
    }
    SharedCore core;
    for (int i = 0; i < n; ++i) {
      const int s = side[game.player(i).source];
      const int t = side[game.player(i).target];
      if (s == minus && t == plus) {
        core.swapped.push_back(false);
      } else if (s == plus && t == minus) {
        core.swapped.push_back(true);
      } else {
        throw StructureError("player " + game.player(i).id +
                             " does not cross between the two sides");
      }
    }
    for (int v = 0; v < game.num_vertices(); ++v) {
      if (forest.component(v) < 0) continue;
      if (side[v] == minus) {
        core.minus_vertices.push_back(v);
      } else if (side[v] == plus) {
        core.plus_vertices.push_back(v);
      } else {
        // Interior vertex of the shared path: no forest edges besides
        // shared ones may touch it.
        for (int e : rest) {
          if (game.edge(e).u == v || game.edge(e).v == v) {
            throw StructureError("more than two sides remain after removing "
                                 "the shared edges");
          }
        }
      }
    }
    for (int e : rest) {
      (side[game.edge(e).u] == minus ? core.minus_edges : core.plus_edges)
          .push_back(e);
    }
    dec.core = std::move(core);

    dec.core->first_shared.assign(n, std::vector<int>(n, -1));
    dec.core->last_shared.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
      const Path walk = dec.OrientedPath(i);
      for (int j = 0; j < n; ++j) {
        for (int e : walk) {
          if (!optimum.Uses(j, e)) continue;
          if (dec.core->first_shared[i][j] < 0) {
            dec.core->first_shared[i][j] = e;
          }
          dec.core->last_shared[i][j] = e;
        }
      }
    }
  }

  std::vector<int> terminals;
  for (const Player& p : game.players()) {
    terminals.push_back(p.source);
    terminals.push_back(p.target);
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()),
                  terminals.end());
  for (int x : terminals) {
    for (int y : terminals) {
      if (auto path = forest.PathBetween(x, y)) {
        dec.terminal_paths.emplace(std::make_pair(x, y), *std::move(path));
      }
    }
  }
  return dec;
}

}  // namespace sndg
