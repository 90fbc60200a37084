#ifndef SNDG_GENERATORS_H_
#define SNDG_GENERATORS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg {

// Portable uniform integer in [lo, hi]; std::uniform_int_distribution is
// implementation-defined, this is not.
std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo,
                        std::int64_t hi);

// SplitMix64 step, used to derive per-instance seeds from a campaign seed.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index);

struct RandomGameOptions {
  int players = 2;
  int vertices = 4;
  int edges = 5;
  Rational min_cost = 0;
  Rational max_cost = 3;
  bool directed = false;
};

inline constexpr int kGenerationRetries = 1000;

// Random multigraph without self-loops, costs p/d with d in 1..10 inside
// [min_cost, max_cost], players with distinct connected terminals.
// Deterministic in `seed`. GenerationError when no valid instance turns up
// within kGenerationRetries attempts or the parameters are impossible.
Game RandomInstance(const RandomGameOptions& options, std::uint64_t seed);

// Directed: per player i an edge s_i->t of cost 1/i and a free edge s_i->v;
// one shared edge v->t of cost 1 + eps. DomainError unless n >= 2, eps > 0.
Game DirectedHarmonicFamily(int n, const Rational& eps);

// Undirected: spokes a-s_i and b-t_i, bridge a-b. `spoke_costs` holds
// either one cost for all 2n spokes or 2n costs (left spokes, then right).
Game SharedBridgeFamily(int n, const Rational& bridge_cost,
                        const std::vector<Rational>& spoke_costs = {1});

}  // namespace sndg

#endif  // SNDG_GENERATORS_H_
