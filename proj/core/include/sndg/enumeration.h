#ifndef SNDG_ENUMERATION_H_
#define SNDG_ENUMERATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sndg/game.h"

namespace sndg {

inline constexpr std::uint64_t kDefaultProfileBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultPathCap = 1'000'000;

// All simple s_i-t_i paths of player i, sorted lexicographically by edge
// index sequence. Throws BudgetError once more than `cap` paths exist.
std::vector<Path> EnumeratePaths(const Game& game, int player,
                                 std::uint64_t cap = kDefaultPathCap);

// Per-player strategy sets and the mixed-radix numbering of profiles:
// player 0 is the most significant digit, so profile indices follow the
// lexicographic order over per-player path indices.
class StrategySpace {
 public:
  static StrategySpace Build(const Game& game,
                             std::uint64_t path_cap = kDefaultPathCap);

  int num_players() const { return static_cast<int>(paths_.size()); }
  const std::vector<Path>& paths(int player) const { return paths_[player]; }
  const Path& path(int player, int index) const {
    return paths_[player][index];
  }
  int num_paths(int player) const {
    return static_cast<int>(paths_[player].size());
  }

  // Product of the strategy-set sizes, saturating at UINT64_MAX.
  std::uint64_t size() const { return size_; }

  std::vector<int> Digits(std::uint64_t index) const;
  std::uint64_t Index(std::span<const int> digits) const;
  StrategyProfile Profile(const Game& game, std::uint64_t index) const;
  // Position of `profile` in the numbering (nullopt if a path is unknown).
  std::optional<std::uint64_t> IndexOf(const StrategyProfile& profile) const;

  // Splits [0, size) into at most `parts` contiguous ranges whose
  // boundaries fall on changes of player 0's path index.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> PartitionByFirstPlayer(
      int parts) const;

 private:
  std::vector<std::vector<Path>> paths_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t size_ = 0;
};

// Throws BudgetError if the profile space is larger than `budget`.
void RequireWithinBudget(const StrategySpace& space, std::uint64_t budget);

// Yields every profile exactly once in index order. Only the current
// digit vector is kept between steps.
class ProfileStream {
 public:
  // Throws BudgetError before yielding anything if the space is too large.
  ProfileStream(const Game& game, const StrategySpace& space,
                std::uint64_t budget = kDefaultProfileBudget);

  std::optional<StrategyProfile> Next();
  // Index of the profile the next call to Next() returns.
  std::uint64_t position() const { return position_; }

 private:
  const Game* game_;
  const StrategySpace* space_;
  std::vector<int> digits_;
  std::uint64_t position_ = 0;
};

}  // namespace sndg

#endif  // SNDG_ENUMERATION_H_
