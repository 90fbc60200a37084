#include "sndg/equilibrium.h"

#include <random>

#include <gtest/gtest.h>

#include "sndg/arithmetic.h"
#include "sndg/errors.h"
#include "sndg/generators.h"
#include "test_games.h"

namespace sndg {
namespace {

using testing::EdgeIds;
using testing::InstanceA;
using testing::MakeGame;
using testing::ProfileOf;

using Ids = std::vector<std::string>;

TEST(BestResponseTest, InstanceA) {
  const Game game = InstanceA();
  const auto split = ProfileOf(game, {{"e1"}, {"e2"}});
  EXPECT_EQ(EdgeIds(game, BestResponse(game, split, 0)), Ids{"e2"});
  EXPECT_EQ(DeviationCost(game, split, 0, testing::EdgePath(game, {"e2"})),
            Rational(3, 2));
  const auto both = ProfileOf(game, {{"e1"}, {"e1"}});
  EXPECT_EQ(EdgeIds(game, BestResponse(game, both, 1)), Ids{"e1"});
}

TEST(BestResponseTest, SinglePlayerTakesCheapestPath) {
  const Game game = MakeGame({"a", "b", "c"},
                             {{"ab", "a", "b", 5}, {"ac", "a", "c", 1},
                              {"cb", "c", "b", 2}},
                             {{"1", "a", "b"}});
  const auto p = ProfileOf(game, {{"ab"}});
  EXPECT_EQ(EdgeIds(game, BestResponse(game, p, 0)), (Ids{"ac", "cb"}));
}

TEST(BestResponseTest, TiesGoToLexicographicallySmallestPath) {
  const Game game = MakeGame({"a", "b", "c"},
                             {{"e1", "a", "c", 1}, {"e2", "c", "b", 1},
                              {"e3", "a", "b", 2}},
                             {{"1", "a", "b"}});
  const auto p = ProfileOf(game, {{"e3"}});
  EXPECT_EQ(EdgeIds(game, BestResponse(game, p, 0)), (Ids{"e1", "e2"}));
}

TEST(IsNashTest, InstanceA) {
  const Game game = InstanceA();
  EXPECT_TRUE(IsNash(game, ProfileOf(game, {{"e1"}, {"e1"}})).is_nash);
  EXPECT_TRUE(IsNash(game, ProfileOf(game, {{"e2"}, {"e2"}})).is_nash);
  const NashVerdict split = IsNash(game, ProfileOf(game, {{"e1"}, {"e2"}}));
  EXPECT_FALSE(split.is_nash);
  ASSERT_TRUE(split.player.has_value());
  EXPECT_EQ(*split.player, 0);
  EXPECT_EQ(EdgeIds(game, split.improving_path), Ids{"e2"});
  EXPECT_EQ(split.current_cost, Rational(2));
  EXPECT_EQ(split.deviation_cost, Rational(3, 2));
}

TEST(EnumerateNashTest, InstanceA) {
  const Game game = InstanceA();
  const auto nash = EnumerateNash(game);
  ASSERT_EQ(nash.size(), 2u);
  EXPECT_EQ(nash[0], ProfileOf(game, {{"e1"}, {"e1"}}));
  EXPECT_EQ(nash[1], ProfileOf(game, {{"e2"}, {"e2"}}));
}

TEST(EnumerateNashTest, SinglePlayerKeepsAllCheapestPaths) {
  const Game game = MakeGame({"a", "b", "c"},
                             {{"ab", "a", "b", 2}, {"ac", "a", "c", 1},
                              {"cb", "c", "b", 1}},
                             {{"1", "a", "b"}});
  EXPECT_EQ(EnumerateNash(game).size(), 2u);
  EXPECT_EQ(PotentialMinimizers(game).profiles.size(), 2u);
}

TEST(EnumerateNashTest, DirectedFamilyHasOneEquilibrium) {
  const Game game = DirectedHarmonicFamily(2, Rational(1, 10));
  const auto nash = EnumerateNash(game);
  ASSERT_EQ(nash.size(), 1u);
  EXPECT_EQ(EdgeIds(game, nash[0].path(0)), Ids{"d1"});
  EXPECT_EQ(EdgeIds(game, nash[0].path(1)), Ids{"d2"});
}

TEST(EnumerateNashTest, BudgetError) {
  EXPECT_THROW(EnumerateNash(InstanceA(), ScanSettings{3, 1}), BudgetError);
}

TEST(PotentialMinimizersTest, InstanceA) {
  const Game game = InstanceA();
  const MinimizerSet set = PotentialMinimizers(game);
  EXPECT_EQ(set.potential, Rational(3));
  ASSERT_EQ(set.profiles.size(), 1u);
  EXPECT_EQ(set.profiles[0], ProfileOf(game, {{"e1"}, {"e1"}}));
}

TEST(PotentialMinimizersTest, ZeroCostGraphMinimizesEverywhere) {
  const Game game = MakeGame({"a", "b"}, {{"e1", "a", "b", 0}, {"e2", "a", "b", 0}},
                             {{"1", "a", "b"}, {"2", "a", "b"}});
  const MinimizerSet set = PotentialMinimizers(game);
  EXPECT_EQ(set.potential, Rational(0));
  EXPECT_EQ(set.profiles.size(), 4u);
}

TEST(DynamicsTest, InstanceAFromSplitProfile) {
  const Game game = InstanceA();
  const std::vector<int> order = {0, 1};
  const DynamicsResult result =
      BestResponseDynamics(game, ProfileOf(game, {{"e1"}, {"e2"}}), order);
  EXPECT_EQ(result.profile, ProfileOf(game, {{"e2"}, {"e2"}}));
  ASSERT_EQ(result.trace.size(), 1u);
  EXPECT_EQ(result.trace[0].player, 0);
  EXPECT_EQ(result.trace[0].old_cost, Rational(2));
  EXPECT_EQ(result.trace[0].new_cost, Rational(3, 2));
  EXPECT_EQ(result.trace[0].potential, Rational(9, 2));
}

TEST(DynamicsTest, EquilibriumStartMakesNoMoves) {
  const Game game = InstanceA();
  const auto start = ProfileOf(game, {{"e2"}, {"e2"}});
  const DynamicsResult result = BestResponseDynamics(game, start);
  EXPECT_TRUE(result.trace.empty());
  EXPECT_EQ(result.profile, start);
}

TEST(DynamicsTest, ScheduleMustCoverEveryPlayer) {
  const Game game = InstanceA();
  const std::vector<int> order = {0};
  EXPECT_THROW(
      BestResponseDynamics(game, ProfileOf(game, {{"e1"}, {"e2"}}), order),
      PreconditionError);
}

TEST(PriceRatiosTest, InstanceA) {
  const EquilibriumReport report = PriceRatios(InstanceA());
  EXPECT_EQ(report.profile_count, 4u);
  EXPECT_EQ(report.nash, (std::vector<std::uint64_t>{0, 3}));
  EXPECT_EQ(report.minimizers, (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(report.optimum_cost, Rational(2));
  EXPECT_EQ(report.PoS(), Rational(1));
  EXPECT_EQ(report.PoA(), Rational(3, 2));
  EXPECT_EQ(report.POPoA(), Rational(1));
}

TEST(PriceRatiosTest, DirectedFamily) {
  const EquilibriumReport report =
      PriceRatios(DirectedHarmonicFamily(2, Rational(1, 10)));
  EXPECT_EQ(report.PoS(), Rational(15, 11));
  EXPECT_EQ(report.PoA(), Rational(15, 11));
  EXPECT_EQ(report.optimum_cost, Rational(11, 10));
}

TEST(PriceRatiosTest, SinglePlayerRatiosAreOne) {
  const EquilibriumReport report = PriceRatios(testing::Triangle());
  EXPECT_EQ(report.PoS(), Rational(1));
  EXPECT_EQ(report.PoA(), Rational(1));
  EXPECT_EQ(report.POPoA(), Rational(1));
}

TEST(PriceRatiosTest, ZeroCostOptimumIsDegenerate) {
  const Game game = MakeGame({"a", "b"}, {{"e1", "a", "b", 0}, {"e2", "a", "b", 1}},
                             {{"1", "a", "b"}, {"2", "a", "b"}});
  const EquilibriumReport report = PriceRatios(game);
  EXPECT_FALSE(report.ratios_defined());
  EXPECT_FALSE(report.price_of_stability.has_value());
  EXPECT_THROW(report.PoS(), DegenerateError);
  EXPECT_THROW(report.PoA(), DegenerateError);
  EXPECT_THROW(report.POPoA(), DegenerateError);
}

Game DrawGame(std::mt19937_64& rng) {
  RandomGameOptions options;
  options.players = 1 + static_cast<int>(rng() % 3);
  options.vertices = 2 + static_cast<int>(rng() % 4);
  options.edges = options.vertices - 1 + static_cast<int>(rng() % 5);
  return RandomInstance(options, rng());
}

// The integer scan behind EnumerateNash and PriceRatios against the direct
// rational best-response test, plus the ordering PoS <= POPoA <= PoA <= n.
TEST(EquilibriumPropertyTest, ScanMatchesDirectChecks) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    const Game game = DrawGame(rng);
    const StrategySpace space = StrategySpace::Build(game);
    const EquilibriumReport report = PriceRatios(game, space);
    std::vector<std::uint64_t> direct;
    Rational min_potential;
    for (std::uint64_t k = 0; k < space.size(); ++k) {
      const StrategyProfile p = space.Profile(game, k);
      if (IsNash(game, p).is_nash) direct.push_back(k);
      const Rational phi = Potential(game, p);
      if (k == 0 || phi < min_potential) min_potential = phi;
    }
    ASSERT_EQ(report.nash, direct) << SocialCost(game, space.Profile(game, 0));
    ASSERT_EQ(report.min_potential, min_potential);
    for (auto k : report.minimizers) {
      ASSERT_TRUE(std::binary_search(direct.begin(), direct.end(), k));
    }
    if (report.ratios_defined()) {
      ASSERT_LE(report.PoS(), report.POPoA());
      ASSERT_LE(report.POPoA(), report.PoA());
      ASSERT_LE(report.PoA(), Rational(game.num_players()));
    }
  }
}

TEST(EquilibriumPropertyTest, BestResponseMatchesExhaustiveSearch) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const Game game = DrawGame(rng);
    const StrategySpace space = StrategySpace::Build(game);
    const StrategyProfile p = space.Profile(game, rng() % space.size());
    const int i = static_cast<int>(rng() % game.num_players());
    // Paths are listed lexicographically, so the first strict minimum is
    // the tie-rule choice.
    const Path* best = nullptr;
    Rational best_cost;
    for (const Path& path : space.paths(i)) {
      const Rational cost = DeviationCost(game, p, i, path);
      if (best == nullptr || cost < best_cost) {
        best = &path;
        best_cost = cost;
      }
    }
    const Path response = BestResponse(game, p, i);
    ASSERT_EQ(DeviationCost(game, p, i, response), best_cost);
    ASSERT_EQ(response, *best);
  }
}

TEST(EquilibriumPropertyTest, DynamicsDecreasePotential) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Game game = DrawGame(rng);
    const StrategySpace space = StrategySpace::Build(game);
    const StrategyProfile start = space.Profile(game, rng() % space.size());
    const DynamicsResult result = BestResponseDynamics(game, start);
    Rational previous = Potential(game, start);
    for (const DynamicsStep& step : result.trace) {
      ASSERT_LT(step.potential, previous);
      ASSERT_LT(step.new_cost, step.old_cost);
      previous = step.potential;
    }
    ASSERT_TRUE(IsNash(game, result.profile).is_nash);
  }
}

TEST(EquilibriumPropertyTest, WorkersDoNotChangeResults) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Game game = DrawGame(rng);
    const EquilibriumReport one = PriceRatios(game, ScanSettings{1000000, 1});
    const EquilibriumReport four = PriceRatios(game, ScanSettings{1000000, 4});
    ASSERT_EQ(one.nash, four.nash);
    ASSERT_EQ(one.minimizers, four.minimizers);
    ASSERT_EQ(one.optimum, four.optimum);
    ASSERT_EQ(one.worst_minimizer, four.worst_minimizer);
  }
}

}  // namespace
}  // namespace sndg
