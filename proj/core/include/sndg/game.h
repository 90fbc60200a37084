#ifndef SNDG_GAME_H_
#define SNDG_GAME_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sndg/rational.h"

namespace sndg {

// Players are addressed by dense index; sets of players are bitmasks.
using PlayerSet = std::uint64_t;
inline constexpr int kMaxPlayers = 64;

inline bool Contains(PlayerSet set, int player) { return (set >> player) & 1; }
inline PlayerSet Singleton(int player) { return PlayerSet{1} << player; }
inline PlayerSet AllPlayers(int n) {
  return n >= kMaxPlayers ? ~PlayerSet{0} : (PlayerSet{1} << n) - 1;
}
int SetSize(PlayerSet set);

// Sequence of edge indices, ordered from the player's source.
using Path = std::vector<int>;

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
  Rational cost;
};

struct PlayerSpec {
  std::string id;
  std::string source;
  std::string target;
};

// Unvalidated, name-addressed description of a game.
struct GameSpec {
  bool directed = false;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<PlayerSpec> players;
};

struct Edge {
  std::string id;
  int u = 0;
  int v = 0;
  Rational cost;
};

struct Player {
  std::string id;
  int source = 0;
  int target = 0;
};

// One way of leaving a vertex: through `edge`, arriving at `head`.
struct Arc {
  int edge = 0;
  int head = 0;
};

// A Shapley network design game on a (multi)graph. Vertices, edges and
// players are stored in natural order of their ids; every index-based
// ordering in the library (lexicographic path order, profile order) derives
// from this.
class Game {
 public:
  // Validates every invariant; throws ValidationError naming the field.
  static Game FromSpec(const GameSpec& spec);
  GameSpec ToSpec() const;

  bool directed() const { return directed_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_players() const { return static_cast<int>(players_.size()); }

  const std::string& vertex(int v) const { return vertices_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const Player& player(int i) const { return players_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Player>& players() const { return players_; }

  // Arcs leaving `v`, sorted by edge index. Undirected edges appear at both
  // endpoints; directed ones only at their tail.
  std::span<const Arc> arcs(int v) const { return adjacency_[v]; }
  // The endpoint of `e` opposite to `v`.
  int Opposite(int e, int v) const;

  std::optional<int> FindVertex(std::string_view name) const;
  std::optional<int> FindEdge(std::string_view id) const;
  std::optional<int> FindPlayer(std::string_view id) const;

  Rational Cost(std::span<const int> edges) const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  Game() = default;

  bool directed_ = false;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Player> players_;
  std::vector<std::vector<Arc>> adjacency_;
};

// Vertex sequence visited by `path` when walked from `start`, or nullopt if
// the edges do not chain (or violate edge direction).
std::optional<std::vector<int>> TraceWalk(const Game& game,
                                          std::span<const int> path,
                                          int start);

// True iff `path` is a simple start-end path (no repeated vertex).
bool IsSimplePath(const Game& game, std::span<const int> path, int start,
                  int end);

// A strategy profile: one simple s_i-t_i path per player, plus the per-edge
// user sets. Immutable after construction.
class StrategyProfile {
 public:
  // Throws ValidationError if a path is not a simple s_i-t_i path.
  static StrategyProfile Create(const Game& game, std::vector<Path> paths);

  int num_players() const { return static_cast<int>(paths_.size()); }
  const Path& path(int i) const { return paths_[i]; }
  const std::vector<Path>& paths() const { return paths_; }

  // k_e(P).
  int usage(int e) const;
  PlayerSet users(int e) const { return users_[e]; }
  bool Uses(int player, int e) const { return Contains(users_[e], player); }
  // E(P), sorted by edge index.
  std::vector<int> UsedEdges() const;

  // The profile with player i's path replaced.
  StrategyProfile WithPath(const Game& game, int i, Path path) const;

  friend bool operator==(const StrategyProfile& a, const StrategyProfile& b) {
    return a.paths_ == b.paths_;
  }

 private:
  StrategyProfile() = default;

  std::vector<Path> paths_;
  std::vector<PlayerSet> users_;
};

// Edge ids joined by commas, e.g. "[e1,e4]".
std::string FormatPath(const Game& game, std::span<const int> path);

}  // namespace sndg

#endif  // SNDG_GAME_H_
