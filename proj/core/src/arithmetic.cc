#include "sndg/arithmetic.h"

#include <cmath>

#include "sndg/errors.h"

namespace sndg {
namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

// Below this argument the asymptotic series is not used directly.
constexpr long double kAsymptoticThreshold = 16.0L;

// H(y) - ln(y) - gamma for y >= kAsymptoticThreshold, via the Bernoulli
// series of digamma(y + 1).
long double AsymptoticTail(long double y) {
  const long double inv = 1.0L / y;
  const long double inv2 = inv * inv;
  // Coefficients B_{2m} / (2m), alternating; enough terms for y >= 16.
  static constexpr long double kCoefficients[] = {
      1.0L / 12.0L,      1.0L / 120.0L,  1.0L / 252.0L,
      1.0L / 240.0L,     1.0L / 132.0L,  691.0L / 32760.0L,
      1.0L / 12.0L,
  };
  long double series = 0.0L;
  long double power = inv2;
  long double sign = -1.0L;
  for (long double c : kCoefficients) {
    series += sign * c * power;
    power *= inv2;
    sign = -sign;
  }
  return 0.5L * inv + series;
}

}  // namespace

Rational HarmonicInt(int k) {
  if (k < 0) throw DomainError("harmonic number of negative index");
  mpq_class sum;
  for (int m = 1; m <= k; ++m) sum += mpq_class(1, m);
  return Rational(sum);
}

std::vector<Rational> HarmonicTable(int n) {
  if (n < 0) throw DomainError("harmonic table of negative size");
  std::vector<Rational> table(n + 1);
  for (int m = 1; m <= n; ++m) table[m] = table[m - 1] + Rational(1, m);
  return table;
}

long double HarmonicRealLong(long double k) {
  if (!(k >= 0.0L)) throw DomainError("harmonic number of negative argument");
  if (k == 0.0L) return 0.0L;
  // H(k) = H(k + m) - sum_{j=1..m} 1 / (k + j).
  long double y = k;
  long double shift = 0.0L;
  while (y < kAsymptoticThreshold) {
    y += 1.0L;
    shift += 1.0L / y;
  }
  return std::log(y) + kEulerGamma + AsymptoticTail(y) - shift;
}

double HarmonicReal(double k) {
  return static_cast<double>(HarmonicRealLong(k));
}

Rational PlayerCost(const Game& game, const StrategyProfile& profile,
                    int player) {
  Rational cost;
  for (int e : profile.path(player)) {
    cost += game.edge(e).cost / Rational(profile.usage(e));
  }
  return cost;
}

Rational SocialCost(const Game& game, const StrategyProfile& profile) {
  return game.Cost(profile.UsedEdges());
}

Rational Potential(const Game& game, const StrategyProfile& profile) {
  Rational phi;
  for (int e : profile.UsedEdges()) {
    phi += HarmonicInt(profile.usage(e)) * game.edge(e).cost;
  }
  return phi;
}

Rational UsagePartition::BlockCost(PlayerSet users) const {
  const auto it = blocks.find(users);
  return it == blocks.end() ? Rational() : it->second.cost;
}

Rational UsagePartition::LevelCost(int level) const {
  const auto it = levels.find(level);
  return it == levels.end() ? Rational() : it->second;
}

UsagePartition ComputeUsagePartition(const Game& game,
                                     const StrategyProfile& profile) {
  UsagePartition partition;
  for (int e : profile.UsedEdges()) {
    const PlayerSet users = profile.users(e);
    UsageBlock& block = partition.blocks[users];
    block.edges.push_back(e);
    block.cost += game.edge(e).cost;
  }
  for (const auto& [users, block] : partition.blocks) {
    partition.levels[SetSize(users)] += block.cost;
  }
  return partition;
}

Rational PotentialFromLevels(const UsagePartition& partition) {
  Rational phi;
  for (const auto& [level, cost] : partition.levels) {
    phi += HarmonicInt(level) * cost;
  }
  return phi;
}

}  // namespace sndg
