#include "sndg/enumeration.h"

#include <algorithm>
#include <limits>

#include "sndg/errors.h"

namespace sndg {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

class PathCollector {
 public:
  PathCollector(const Game& game, int target, std::uint64_t cap,
                const std::string& owner)
      : game_(game),
        target_(target),
        cap_(cap),
        owner_(owner),
        on_path_(game.num_vertices(), false) {}

  void Run(int source) {
    on_path_[source] = true;
    Visit(source);
  }

  std::vector<Path> Take() { return std::move(found_); }

 private:
  void Visit(int v) {
    for (const Arc& arc : game_.arcs(v)) {
      if (on_path_[arc.head]) continue;
      current_.push_back(arc.edge);
      if (arc.head == target_) {
        if (found_.size() >= cap_) {
          throw BudgetError("path count for player " + owner_, found_.size() + 1,
                            cap_);
        }
        found_.push_back(current_);
      } else {
        on_path_[arc.head] = true;
        Visit(arc.head);
        on_path_[arc.head] = false;
      }
      current_.pop_back();
    }
  }

  const Game& game_;
  int target_;
  std::uint64_t cap_;
  std::string owner_;
  std::vector<bool> on_path_;
  Path current_;
  std::vector<Path> found_;
};

}  // namespace

std::vector<Path> EnumeratePaths(const Game& game, int player,
                                 std::uint64_t cap) {
  if (player < 0 || player >= game.num_players()) {
    throw DomainError("no player with index " + std::to_string(player));
  }
  const Player& p = game.player(player);
  PathCollector collector(game, p.target, cap, p.id);
  collector.Run(p.source);
  return collector.Take();
}

StrategySpace StrategySpace::Build(const Game& game, std::uint64_t path_cap) {
  StrategySpace space;
  const int n = game.num_players();
  space.paths_.reserve(n);
  for (int i = 0; i < n; ++i) {
    space.paths_.push_back(EnumeratePaths(game, i, path_cap));
  }
  space.stride_.assign(n, 1);
  space.size_ = 1;
  for (int i = n - 1; i >= 0; --i) {
    space.stride_[i] = space.size_;
    space.size_ = SaturatingMul(space.size_, space.paths_[i].size());
  }
  return space;
}

std::vector<int> StrategySpace::Digits(std::uint64_t index) const {
  std::vector<int> digits(paths_.size());
  for (size_t i = 0; i < paths_.size(); ++i) {
    digits[i] = static_cast<int>(index / stride_[i]);
    index %= stride_[i];
  }
  return digits;
}

std::uint64_t StrategySpace::Index(std::span<const int> digits) const {
  std::uint64_t index = 0;
  for (size_t i = 0; i < digits.size(); ++i) index += digits[i] * stride_[i];
  return index;
}

StrategyProfile StrategySpace::Profile(const Game& game,
                                       std::uint64_t index) const {
  const std::vector<int> digits = Digits(index);
  std::vector<Path> chosen;
  chosen.reserve(digits.size());
  for (size_t i = 0; i < digits.size(); ++i) {
    chosen.push_back(paths_[i][digits[i]]);
  }
  return StrategyProfile::Create(game, std::move(chosen));
}

std::optional<std::uint64_t> StrategySpace::IndexOf(
    const StrategyProfile& profile) const {
  std::vector<int> digits;
  for (int i = 0; i < num_players(); ++i) {
    const auto& set = paths_[i];
    const auto it = std::lower_bound(set.begin(), set.end(), profile.path(i));
    if (it == set.end() || *it != profile.path(i)) return std::nullopt;
    digits.push_back(static_cast<int>(it - set.begin()));
  }
  return Index(digits);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
StrategySpace::PartitionByFirstPlayer(int parts) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  if (size_ == 0 || paths_.empty()) return ranges;
  const int first = num_paths(0);
  parts = std::clamp(parts, 1, first);
  for (int k = 0; k < parts; ++k) {
    const std::uint64_t lo = stride_[0] * (static_cast<std::uint64_t>(first) * k / parts);
    const std::uint64_t hi =
        stride_[0] * (static_cast<std::uint64_t>(first) * (k + 1) / parts);
    if (lo < hi) ranges.emplace_back(lo, hi);
  }
  return ranges;
}

void RequireWithinBudget(const StrategySpace& space, std::uint64_t budget) {
  if (space.size() > budget) {
    throw BudgetError("profile space size", space.size(), budget);
  }
}

ProfileStream::ProfileStream(const Game& game, const StrategySpace& space,
                             std::uint64_t budget)
    : game_(&game), space_(&space), digits_(space.num_players(), 0) {
  RequireWithinBudget(space, budget);
}

std::optional<StrategyProfile> ProfileStream::Next() {
  if (position_ >= space_->size()) return std::nullopt;
  std::vector<Path> chosen;
  chosen.reserve(digits_.size());
  for (size_t i = 0; i < digits_.size(); ++i) {
    chosen.push_back(space_->path(static_cast<int>(i), digits_[i]));
  }
  ++position_;
  for (int i = static_cast<int>(digits_.size()) - 1; i >= 0; --i) {
    if (++digits_[i] < space_->num_paths(i)) break;
    digits_[i] = 0;
  }
  return StrategyProfile::Create(*game_, std::move(chosen));
}

}  // namespace sndg
