#ifndef SNDG_ARITHMETIC_H_
#define SNDG_ARITHMETIC_H_

#include <map>
#include <vector>

#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg {

// Exact H_k = 1 + 1/2 + ... + 1/k; H_0 = 0.
Rational HarmonicInt(int k);
// H_0 .. H_n.
std::vector<Rational> HarmonicTable(int n);

// H(k) = integral_0^1 (1 - x^k) / (1 - x) dx for real k >= 0, evaluated via
// upward recurrence and the asymptotic series of the digamma function.
// Absolute error well below 1e-12. Throws DomainError for k < 0.
double HarmonicReal(double k);
long double HarmonicRealLong(long double k);

// cost_i(P): sum over P_i of c_e / k_e(P).
Rational PlayerCost(const Game& game, const StrategyProfile& profile,
                    int player);
// cost(P): sum of c_e over E(P).
Rational SocialCost(const Game& game, const StrategyProfile& profile);
// Rosenthal potential: sum over E(P) of H_{k_e(P)} c_e.
Rational Potential(const Game& game, const StrategyProfile& profile);

// Edges grouped by the exact set of players using them.
struct UsageBlock {
  std::vector<int> edges;  // sorted by edge index
  Rational cost;           // |P_U|
};

struct UsagePartition {
  // P_U for every U with P_U nonempty.
  std::map<PlayerSet, UsageBlock> blocks;
  // |P^l| for every l with P^l nonempty.
  std::map<int, Rational> levels;

  // |P_U|, zero when U uses no edge exclusively.
  Rational BlockCost(PlayerSet users) const;
  // |P^l|, zero when absent.
  Rational LevelCost(int level) const;
};

UsagePartition ComputeUsagePartition(const Game& game,
                                     const StrategyProfile& profile);

// sum_l H_l |P^l|; equals Potential() for the partitioned profile.
Rational PotentialFromLevels(const UsagePartition& partition);

}  // namespace sndg

#endif  // SNDG_ARITHMETIC_H_
