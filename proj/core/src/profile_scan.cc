#include "profile_scan.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <thread>

#include "sndg/errors.h"

namespace sndg::internal {
namespace {

using Int = __int128;

// Headroom below 2^127 for sums over all edges.
constexpr int kMaxScaledBits = 120;

Int ToInt(const mpz_class& value) {
  const bool negative = sgn(value) < 0;
  mpz_class magnitude = abs(value);
  const mpz_class low = magnitude & mpz_class("18446744073709551615");
  const mpz_class high = magnitude >> 64;
  const Int result = (static_cast<Int>(high.get_ui()) << 64) +
                     static_cast<Int>(low.get_ui());
  return negative ? -result : result;
}

mpz_class ToMpz(Int value) {
  const bool negative = value < 0;
  unsigned __int128 magnitude =
      negative ? -static_cast<unsigned __int128>(value) : value;
  mpz_class result(static_cast<unsigned long>(magnitude >> 64));
  result <<= 64;
  result += static_cast<unsigned long>(magnitude & ~0UL);
  return negative ? mpz_class(-result) : result;
}

mpz_class Integral(const mpq_class& value) {
  if (value.get_den() != 1) throw InternalError("scaled value not integral");
  return value.get_num();
}

// Per-edge integer tables: value * scale for c_e, c_e/k and H_k c_e.
struct ScaledGame {
  mpz_class scale;
  std::vector<Int> cost;
  std::vector<std::vector<Int>> share;      // [e][k], k = 1..n
  std::vector<std::vector<Int>> potential;  // [e][k], k = 0..n

  Rational Unscale(Int value) const {
    return Rational(mpq_class(ToMpz(value), scale));
  }
};

ScaledGame Scale(const Game& game) {
  const int n = game.num_players();
  mpz_class scale = 1;
  for (const Edge& e : game.edges()) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
            e.cost.denominator().get_mpz_t());
  }
  mpz_class player_lcm = 1;
  for (int k = 2; k <= n; ++k) {
    mpz_lcm_ui(player_lcm.get_mpz_t(), player_lcm.get_mpz_t(), k);
  }
  scale *= player_lcm;

  mpq_class total_bound;
  for (const Edge& e : game.edges()) total_bound += e.cost.mpq();
  mpq_class harmonic_n;
  for (int k = 1; k <= n; ++k) harmonic_n += mpq_class(1, k);
  const mpz_class bound =
      mpz_class(total_bound * harmonic_n * mpq_class(scale) + 1);
  const int bits = static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  if (bits > kMaxScaledBits) {
    throw BudgetError("scaled cost bit length", bits, kMaxScaledBits);
  }

  ScaledGame scaled;
  scaled.scale = scale;
  const mpq_class q_scale(scale);
  for (const Edge& e : game.edges()) {
    const mpq_class c = e.cost.mpq() * q_scale;
    scaled.cost.push_back(ToInt(c.get_num()));
    std::vector<Int> share(n + 1, 0), pot(n + 1, 0);
    mpq_class h;
    for (int k = 1; k <= n; ++k) {
      h += mpq_class(1, k);
      share[k] = ToInt(Integral(c / k));
      pot[k] = ToInt(Integral(c * h));
    }
    scaled.share.push_back(std::move(share));
    scaled.potential.push_back(std::move(pot));
  }
  return scaled;
}

// Partial reduction over one index range, in scaled integers.
struct Partial {
  std::uint64_t profiles = 0;
  std::vector<std::uint64_t> nash;
  std::uint64_t nash_count = 0;
  std::optional<std::uint64_t> best_nash, worst_nash;
  Int best_nash_cost = 0, worst_nash_cost = 0;
  std::optional<Int> min_potential;
  std::vector<std::uint64_t> minimizers;
  std::uint64_t minimizer_count = 0;
  std::uint64_t first_minimizer = 0, worst_minimizer = 0;
  Int worst_minimizer_cost = 0;
  bool minimizers_are_nash = true;
  std::optional<std::uint64_t> optimum;
  Int optimum_cost = 0;
};

class RangeScanner {
 public:
  RangeScanner(const Game& game, const StrategySpace& space,
               const ScaledGame& scaled, const ScanOptions& options)
      : game_(game),
        space_(space),
        scaled_(scaled),
        options_(options),
        n_(game.num_players()),
        users_(game.num_edges(), 0),
        stamp_(game.num_edges(), 0),
        parent_(game.num_vertices()) {}

  Partial Run(std::uint64_t lo, std::uint64_t hi) {
    Partial out;
    digits_ = space_.Digits(lo);
    for (int i = 0; i < n_; ++i) {
      for (int e : space_.path(i, digits_[i])) users_[e] |= Singleton(i);
    }
    for (int e = 0; e < game_.num_edges(); ++e) Add(e);

    for (std::uint64_t index = lo; index < hi; ++index) {
      Visit(index, out);
      if (index + 1 < hi) Advance();
    }
    return out;
  }

 private:
  int Load(int e) const { return std::popcount(users_[e]); }

  void Add(int e) {
    const int k = Load(e);
    phi_ += scaled_.potential[e][k];
    if (k > 0) cost_ += scaled_.cost[e];
  }

  void Remove(int e) {
    const int k = Load(e);
    phi_ -= scaled_.potential[e][k];
    if (k > 0) cost_ -= scaled_.cost[e];
  }

  // Switches player i to path index `next`, updating phi and cost.
  void Switch(int i, int next) {
    const Path& old_path = space_.path(i, digits_[i]);
    const Path& new_path = space_.path(i, next);
    ++epoch_;
    touched_.clear();
    for (const Path* p : {&old_path, &new_path}) {
      for (int e : *p) {
        if (stamp_[e] != epoch_) {
          stamp_[e] = epoch_;
          touched_.push_back(e);
          Remove(e);
        }
      }
    }
    for (int e : old_path) users_[e] &= ~Singleton(i);
    for (int e : new_path) users_[e] |= Singleton(i);
    for (int e : touched_) Add(e);
    digits_[i] = next;
  }

  void Advance() {
    for (int i = n_ - 1; i >= 0; --i) {
      const int next = digits_[i] + 1;
      if (next < space_.num_paths(i)) {
        Switch(i, next);
        return;
      }
      Switch(i, 0);
    }
  }

  bool IsNash() const {
    for (int i = 0; i < n_; ++i) {
      Int current = 0;
      for (int e : space_.path(i, digits_[i])) {
        current += scaled_.share[e][Load(e)];
      }
      for (int q = 0; q < space_.num_paths(i); ++q) {
        if (q == digits_[i]) continue;
        Int deviation = 0;
        for (int e : space_.path(i, q)) {
          const int others = Load(e) - (Contains(users_[e], i) ? 1 : 0);
          deviation += scaled_.share[e][others + 1];
          if (deviation >= current) break;
        }
        if (deviation < current) return false;
      }
    }
    return true;
  }

  int Find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  bool UsedEdgesFormForest() {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (int e = 0; e < game_.num_edges(); ++e) {
      if (users_[e] == 0) continue;
      const int a = Find(game_.edge(e).u), b = Find(game_.edge(e).v);
      if (a == b) return false;
      parent_[a] = b;
    }
    return true;
  }

  void Visit(std::uint64_t index, Partial& out) {
    ++out.profiles;
    const bool nash = options_.nash && IsNash();
    if (nash) {
      ++out.nash_count;
      if (options_.keep_nash) out.nash.push_back(index);
      if (!out.best_nash || cost_ < out.best_nash_cost) {
        out.best_nash = index;
        out.best_nash_cost = cost_;
      }
      if (!out.worst_nash || cost_ > out.worst_nash_cost) {
        out.worst_nash = index;
        out.worst_nash_cost = cost_;
      }
    }

    if (!out.min_potential || phi_ < *out.min_potential) {
      out.min_potential = phi_;
      out.minimizers.clear();
      out.minimizer_count = 0;
      out.first_minimizer = index;
      out.worst_minimizer = index;
      out.worst_minimizer_cost = cost_;
      out.minimizers_are_nash = true;
    }
    if (phi_ == *out.min_potential) {
      ++out.minimizer_count;
      if (options_.keep_minimizers) out.minimizers.push_back(index);
      if (cost_ > out.worst_minimizer_cost) {
        out.worst_minimizer = index;
        out.worst_minimizer_cost = cost_;
      }
      if (options_.nash && !nash) out.minimizers_are_nash = false;
    }

    if (options_.optimum && (!out.optimum || cost_ < out.optimum_cost)) {
      if (game_.directed() || UsedEdgesFormForest()) {
        out.optimum = index;
        out.optimum_cost = cost_;
      }
    }
  }

  const Game& game_;
  const StrategySpace& space_;
  const ScaledGame& scaled_;
  const ScanOptions& options_;
  const int n_;

  std::vector<int> digits_;
  std::vector<PlayerSet> users_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<int> touched_;
  std::vector<int> parent_;
  Int phi_ = 0;
  Int cost_ = 0;
};

// Folds `next` (a later index range) into `acc`, keeping earliest indices
// on ties.
void Merge(Partial& acc, Partial&& next) {
  acc.profiles += next.profiles;
  acc.nash_count += next.nash_count;
  acc.nash.insert(acc.nash.end(), next.nash.begin(), next.nash.end());
  if (next.best_nash &&
      (!acc.best_nash || next.best_nash_cost < acc.best_nash_cost)) {
    acc.best_nash = next.best_nash;
    acc.best_nash_cost = next.best_nash_cost;
  }
  if (next.worst_nash &&
      (!acc.worst_nash || next.worst_nash_cost > acc.worst_nash_cost)) {
    acc.worst_nash = next.worst_nash;
    acc.worst_nash_cost = next.worst_nash_cost;
  }
  if (next.min_potential) {
    if (!acc.min_potential || *next.min_potential < *acc.min_potential) {
      acc.min_potential = next.min_potential;
      acc.minimizers = std::move(next.minimizers);
      acc.minimizer_count = next.minimizer_count;
      acc.first_minimizer = next.first_minimizer;
      acc.worst_minimizer = next.worst_minimizer;
      acc.worst_minimizer_cost = next.worst_minimizer_cost;
      acc.minimizers_are_nash = next.minimizers_are_nash;
    } else if (*next.min_potential == *acc.min_potential) {
      acc.minimizers.insert(acc.minimizers.end(), next.minimizers.begin(),
                            next.minimizers.end());
      acc.minimizer_count += next.minimizer_count;
      if (next.worst_minimizer_cost > acc.worst_minimizer_cost) {
        acc.worst_minimizer = next.worst_minimizer;
        acc.worst_minimizer_cost = next.worst_minimizer_cost;
      }
      acc.minimizers_are_nash =
          acc.minimizers_are_nash && next.minimizers_are_nash;
    }
  }
  if (next.optimum &&
      (!acc.optimum || next.optimum_cost < acc.optimum_cost)) {
    acc.optimum = next.optimum;
    acc.optimum_cost = next.optimum_cost;
  }
}

}  // namespace

ScanResult ScanProfiles(const Game& game, const StrategySpace& space,
                        std::uint64_t budget, const ScanOptions& options) {
  RequireWithinBudget(space, budget);
  const ScaledGame scaled = Scale(game);

  const auto ranges =
      space.PartitionByFirstPlayer(std::max(1, options.workers));
  std::vector<Partial> partials(ranges.size());
  if (ranges.size() <= 1) {
    for (size_t k = 0; k < ranges.size(); ++k) {
      partials[k] = RangeScanner(game, space, scaled, options)
                        .Run(ranges[k].first, ranges[k].second);
    }
  } else {
    std::vector<std::thread> threads;
    for (size_t k = 0; k < ranges.size(); ++k) {
      threads.emplace_back([&, k] {
        partials[k] = RangeScanner(game, space, scaled, options)
                          .Run(ranges[k].first, ranges[k].second);
      });
    }
    for (std::thread& t : threads) t.join();
  }

  Partial total;
  for (Partial& p : partials) Merge(total, std::move(p));

  ScanResult result;
  result.profiles = total.profiles;
  result.nash = std::move(total.nash);
  result.nash_count = total.nash_count;
  result.best_nash = total.best_nash;
  result.worst_nash = total.worst_nash;
  result.best_nash_cost = scaled.Unscale(total.best_nash_cost);
  result.worst_nash_cost = scaled.Unscale(total.worst_nash_cost);
  result.min_potential = scaled.Unscale(total.min_potential.value_or(0));
  result.minimizers = std::move(total.minimizers);
  result.minimizer_count = total.minimizer_count;
  result.first_minimizer = total.first_minimizer;
  result.worst_minimizer = total.worst_minimizer;
  result.worst_minimizer_cost = scaled.Unscale(total.worst_minimizer_cost);
  result.minimizers_are_nash = total.minimizers_are_nash;
  result.optimum = total.optimum;
  result.optimum_cost = scaled.Unscale(total.optimum_cost);
  return result;
}

}  // namespace sndg::internal
