#include "sndg/game.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "sndg/errors.h"
#include "sndg/natural_order.h"

namespace sndg {
namespace {

template <typename T, typename Key>
std::vector<T> SortedBy(std::vector<T> items, Key key) {
  std::sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    return NaturalLess(key(a), key(b));
  });
  return items;
}

std::vector<bool> Reachable(const Game& game, int from) {
  std::vector<bool> seen(game.num_vertices(), false);
  std::queue<int> frontier;
  seen[from] = true;
  frontier.push(from);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (const Arc& arc : game.arcs(v)) {
      if (!seen[arc.head]) {
        seen[arc.head] = true;
        frontier.push(arc.head);
      }
    }
  }
  return seen;
}

}  // namespace

int SetSize(PlayerSet set) { return std::popcount(set); }

Game Game::FromSpec(const GameSpec& spec) {
  Game game;
  game.directed_ = spec.directed;

  std::unordered_set<std::string> vertex_names;
  for (size_t k = 0; k < spec.vertices.size(); ++k) {
    const std::string& name = spec.vertices[k];
    const std::string field = "vertices[" + std::to_string(k) + "]";
    if (name.empty()) throw ValidationError(field, "empty vertex name");
    if (!vertex_names.insert(name).second) {
      throw ValidationError(field, "duplicate vertex '" + name + "'");
    }
  }
  game.vertices_ = SortedBy(spec.vertices, [](const std::string& s) {
    return std::string_view(s);
  });
  std::unordered_map<std::string, int> vertex_index;
  for (int v = 0; v < game.num_vertices(); ++v) {
    vertex_index.emplace(game.vertices_[v], v);
  }
  auto lookup = [&](const std::string& field, const std::string& name) {
    const auto it = vertex_index.find(name);
    if (it == vertex_index.end()) {
      throw ValidationError(field, "unknown vertex '" + name + "'");
    }
    return it->second;
  };

  std::unordered_set<std::string> edge_ids;
  for (const EdgeSpec& e : spec.edges) {
    const std::string field = "edges[" + e.id + "]";
    if (e.id.empty()) throw ValidationError("edges", "empty edge id");
    if (!edge_ids.insert(e.id).second) {
      throw ValidationError(field, "duplicate edge id");
    }
    lookup(field + ".u", e.u);
    lookup(field + ".v", e.v);
    if (e.u == e.v) throw ValidationError(field, "self-loop");
    if (e.cost.Sign() < 0) throw ValidationError(field + ".cost", "negative cost");
  }
  for (const EdgeSpec& e : SortedBy(spec.edges, [](const EdgeSpec& x) {
         return std::string_view(x.id);
       })) {
    game.edges_.push_back(Edge{e.id, vertex_index.at(e.u),
                               vertex_index.at(e.v), e.cost});
  }

  if (spec.players.empty()) {
    throw ValidationError("players", "at least one player is required");
  }
  if (spec.players.size() > static_cast<size_t>(kMaxPlayers)) {
    throw ValidationError("players", "more than " +
                                         std::to_string(kMaxPlayers) +
                                         " players are not supported");
  }
  std::unordered_set<std::string> player_ids;
  for (const PlayerSpec& p : spec.players) {
    const std::string field = "players[" + p.id + "]";
    if (p.id.empty()) throw ValidationError("players", "empty player id");
    if (!player_ids.insert(p.id).second) {
      throw ValidationError(field, "duplicate player id");
    }
    const int s = lookup(field + ".source", p.source);
    const int t = lookup(field + ".target", p.target);
    if (s == t) throw ValidationError(field, "source equals target");
  }
  for (const PlayerSpec& p : SortedBy(spec.players, [](const PlayerSpec& x) {
         return std::string_view(x.id);
       })) {
    game.players_.push_back(
        Player{p.id, vertex_index.at(p.source), vertex_index.at(p.target)});
  }

  game.adjacency_.assign(game.vertices_.size(), {});
  for (int e = 0; e < game.num_edges(); ++e) {
    const Edge& edge = game.edges_[e];
    game.adjacency_[edge.u].push_back(Arc{e, edge.v});
    if (!game.directed_) game.adjacency_[edge.v].push_back(Arc{e, edge.u});
  }

  for (const Player& p : game.players_) {
    if (!Reachable(game, p.source)[p.target]) {
      throw ValidationError("players[" + p.id + "]",
                            "unreachable terminal pair " +
                                game.vertices_[p.source] + " -> " +
                                game.vertices_[p.target]);
    }
  }
  return game;
}

GameSpec Game::ToSpec() const {
  GameSpec spec;
  spec.directed = directed_;
  spec.vertices = vertices_;
  for (const Edge& e : edges_) {
    spec.edges.push_back(EdgeSpec{e.id, vertices_[e.u], vertices_[e.v], e.cost});
  }
  for (const Player& p : players_) {
    spec.players.push_back(
        PlayerSpec{p.id, vertices_[p.source], vertices_[p.target]});
  }
  return spec;
}

int Game::Opposite(int e, int v) const {
  const Edge& edge = edges_[e];
  return edge.u == v ? edge.v : edge.u;
}

std::optional<int> Game::FindVertex(std::string_view name) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (vertices_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<int> Game::FindEdge(std::string_view id) const {
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

std::optional<int> Game::FindPlayer(std::string_view id) const {
  for (int i = 0; i < num_players(); ++i) {
    if (players_[i].id == id) return i;
  }
  return std::nullopt;
}

Rational Game::Cost(std::span<const int> edges) const {
  Rational total;
  for (int e : edges) total += edges_[e].cost;
  return total;
}

bool operator==(const Game& a, const Game& b) {
  if (a.directed_ != b.directed_ || a.vertices_ != b.vertices_ ||
      a.edges_.size() != b.edges_.size() ||
      a.players_.size() != b.players_.size()) {
    return false;
  }
  for (size_t k = 0; k < a.edges_.size(); ++k) {
    const Edge &x = a.edges_[k], &y = b.edges_[k];
    if (x.id != y.id || x.u != y.u || x.v != y.v || x.cost != y.cost) {
      return false;
    }
  }
  for (size_t k = 0; k < a.players_.size(); ++k) {
    const Player &x = a.players_[k], &y = b.players_[k];
    if (x.id != y.id || x.source != y.source || x.target != y.target) {
      return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> TraceWalk(const Game& game,
                                          std::span<const int> path,
                                          int start) {
  std::vector<int> vertices{start};
  int at = start;
  for (int e : path) {
    if (e < 0 || e >= game.num_edges()) return std::nullopt;
    const Edge& edge = game.edge(e);
    if (edge.u == at) {
      at = edge.v;
    } else if (edge.v == at && !game.directed()) {
      at = edge.u;
    } else {
      return std::nullopt;
    }
    vertices.push_back(at);
  }
  return vertices;
}

bool IsSimplePath(const Game& game, std::span<const int> path, int start,
                  int end) {
  const auto vertices = TraceWalk(game, path, start);
  if (!vertices || vertices->back() != end) return false;
  std::vector<bool> seen(game.num_vertices(), false);
  for (int v : *vertices) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

StrategyProfile StrategyProfile::Create(const Game& game,
                                        std::vector<Path> paths) {
  if (static_cast<int>(paths.size()) != game.num_players()) {
    throw ValidationError("profile", "expected " +
                                         std::to_string(game.num_players()) +
                                         " paths, got " +
                                         std::to_string(paths.size()));
  }
  StrategyProfile profile;
  profile.users_.assign(game.num_edges(), 0);
  for (int i = 0; i < game.num_players(); ++i) {
    const Player& p = game.player(i);
    if (!IsSimplePath(game, paths[i], p.source, p.target)) {
      throw ValidationError("profile[" + p.id + "]",
                            "not a simple source-target path: " +
                                FormatPath(game, paths[i]));
    }
    for (int e : paths[i]) profile.users_[e] |= Singleton(i);
  }
  profile.paths_ = std::move(paths);
  return profile;
}

int StrategyProfile::usage(int e) const { return SetSize(users_[e]); }

std::vector<int> StrategyProfile::UsedEdges() const {
  std::vector<int> used;
  for (int e = 0; e < static_cast<int>(users_.size()); ++e) {
    if (users_[e] != 0) used.push_back(e);
  }
  return used;
}

StrategyProfile StrategyProfile::WithPath(const Game& game, int i,
                                          Path path) const {
  std::vector<Path> paths = paths_;
  paths[i] = std::move(path);
  return Create(game, std::move(paths));
}

std::string FormatPath(const Game& game, std::span<const int> path) {
  std::string out = "[";
  for (size_t k = 0; k < path.size(); ++k) {
    if (k > 0) out += ",";
    out += (path[k] >= 0 && path[k] < game.num_edges())
               ? game.edge(path[k]).id
               : "?" + std::to_string(path[k]);
  }
  return out + "]";
}

}  // namespace sndg
