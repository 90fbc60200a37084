#ifndef SNDG_SRC_PROFILE_SCAN_H_
#define SNDG_SRC_PROFILE_SCAN_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "sndg/enumeration.h"
#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg::internal {

struct ScanOptions {
  // Evaluate the Nash condition for every profile.
  bool nash = true;
  // Track the social optimum. For undirected games only profiles whose edge
  // union is a forest qualify.
  bool optimum = true;
  bool keep_nash = true;
  bool keep_minimizers = true;
  int workers = 1;
};

// Exhaustive reductions over the whole profile space. Every "first" below
// is the smallest profile index attaining the extremum.
struct ScanResult {
  std::uint64_t profiles = 0;

  std::vector<std::uint64_t> nash;
  std::uint64_t nash_count = 0;
  std::optional<std::uint64_t> best_nash;
  std::optional<std::uint64_t> worst_nash;
  Rational best_nash_cost;
  Rational worst_nash_cost;

  Rational min_potential;
  std::vector<std::uint64_t> minimizers;
  std::uint64_t minimizer_count = 0;
  std::uint64_t first_minimizer = 0;
  std::uint64_t worst_minimizer = 0;
  Rational worst_minimizer_cost;
  // True iff every minimizer passed the (integer) Nash test.
  bool minimizers_are_nash = true;

  std::optional<std::uint64_t> optimum;
  Rational optimum_cost;
};

// Walks every profile once, maintaining edge loads incrementally. All
// quantities are exact: costs are scaled by a common denominator so that
// shares c_e/k and potentials H_k c_e become 128-bit integers. Throws
// BudgetError when the space exceeds `budget` or the scaled values would
// not fit.
ScanResult ScanProfiles(const Game& game, const StrategySpace& space,
                        std::uint64_t budget, const ScanOptions& options);

}  // namespace sndg::internal

#endif  // SNDG_SRC_PROFILE_SCAN_H_
