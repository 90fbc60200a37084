#include "sndg/generators.h"

#include <limits>
#include <numeric>
#include <string>

#include "sndg/errors.h"

namespace sndg {
namespace {

std::string Name(const char* prefix, int index) {
  return prefix + std::to_string(index);
}

// Union-find over vertex indices; enough to test terminal connectivity.
class Components {
 public:
  explicit Components(int size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void Join(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

Rational RandomCost(std::mt19937_64& rng, const Rational& lo,
                    const Rational& hi) {
  // Retry denominators until the range holds a multiple of 1/d.
  for (;;) {
    const long d = UniformInt(rng, 1, 10);
    mpq_class low_q = lo.mpq() * d;
    mpz_class low;
    mpz_cdiv_q(low.get_mpz_t(), low_q.get_num_mpz_t(), low_q.get_den_mpz_t());
    mpq_class high_q = hi.mpq() * d;
    mpz_class high;
    mpz_fdiv_q(high.get_mpz_t(), high_q.get_num_mpz_t(),
               high_q.get_den_mpz_t());
    if (low > high) continue;
    const std::int64_t p =
        UniformInt(rng, low.get_si(), high.get_si());
    return Rational(p, d);
  }
}

}  // namespace

std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo,
                        std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Game RandomInstance(const RandomGameOptions& o, std::uint64_t seed) {
  if (o.players < 1 || o.players > kMaxPlayers || o.vertices < 2 ||
      o.edges < 1 || o.min_cost.Sign() < 0 || o.max_cost < o.min_cost) {
    throw GenerationError("impossible generator parameters");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    GameSpec spec;
    spec.directed = o.directed;
    for (int v = 0; v < o.vertices; ++v) spec.vertices.push_back(Name("v", v));
    Components components(o.vertices);
    for (int e = 0; e < o.edges; ++e) {
      const int u = static_cast<int>(UniformInt(rng, 0, o.vertices - 1));
      int v = static_cast<int>(UniformInt(rng, 0, o.vertices - 2));
      if (v >= u) ++v;
      spec.edges.push_back(EdgeSpec{Name("e", e), Name("v", u), Name("v", v),
                                    RandomCost(rng, o.min_cost, o.max_cost)});
      components.Join(u, v);
    }
    bool connected = true;
    for (int i = 0; i < o.players; ++i) {
      const int s = static_cast<int>(UniformInt(rng, 0, o.vertices - 1));
      int t = static_cast<int>(UniformInt(rng, 0, o.vertices - 2));
      if (t >= s) ++t;
      connected = connected && components.Find(s) == components.Find(t);
      spec.players.push_back(PlayerSpec{Name("p", i), Name("v", s),
                                        Name("v", t)});
    }
    if (!connected) continue;
    try {
      return Game::FromSpec(spec);
    } catch (const ValidationError&) {
      // Directed reachability is stricter than the union-find test.
    }
  }
  throw GenerationError("no valid instance after " +
                        std::to_string(kGenerationRetries) + " attempts");
}

Game DirectedHarmonicFamily(int n, const Rational& eps) {
  if (n < 2) throw DomainError("directed family needs n >= 2");
  if (eps.Sign() <= 0) throw DomainError("directed family needs eps > 0");
  GameSpec spec;
  spec.directed = true;
  spec.vertices = {"t", "v"};
  for (int i = 1; i <= n; ++i) {
    const std::string s = Name("s", i);
    spec.vertices.push_back(s);
    spec.edges.push_back(EdgeSpec{Name("d", i), s, "t", Rational(1, i)});
    spec.edges.push_back(EdgeSpec{Name("f", i), s, "v", Rational(0)});
    spec.players.push_back(PlayerSpec{Name("p", i), s, "t"});
  }
  spec.edges.push_back(EdgeSpec{"shared", "v", "t", Rational(1) + eps});
  return Game::FromSpec(spec);
}

Game SharedBridgeFamily(int n, const Rational& bridge_cost,
                        const std::vector<Rational>& spoke_costs) {
  if (n < 2) throw DomainError("bridge family needs n >= 2");
  if (spoke_costs.size() != 1 &&
      spoke_costs.size() != static_cast<size_t>(2 * n)) {
    throw DomainError("bridge family needs 1 or 2n spoke costs");
  }
  auto spoke = [&](int k) {
    return spoke_costs.size() == 1 ? spoke_costs[0] : spoke_costs[k];
  };
  GameSpec spec;
  spec.vertices = {"a", "b"};
  for (int i = 1; i <= n; ++i) {
    spec.vertices.push_back(Name("s", i));
    spec.vertices.push_back(Name("t", i));
    spec.edges.push_back(
        EdgeSpec{Name("ls", i), "a", Name("s", i), spoke(i - 1)});
    spec.edges.push_back(
        EdgeSpec{Name("rt", i), "b", Name("t", i), spoke(n + i - 1)});
    spec.players.push_back(PlayerSpec{Name("p", i), Name("s", i),
                                      Name("t", i)});
  }
  spec.edges.push_back(EdgeSpec{"bridge", "a", "b", bridge_cost});
  return Game::FromSpec(spec);
}

}  // namespace sndg
