#include "sndg/deviation.h"

#include <random>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sndg/arithmetic.h"
#include "sndg/equilibrium.h"
#include "sndg/errors.h"
#include "sndg/generators.h"
#include "test_games.h"

namespace sndg {
namespace {

using testing::EdgeIds;
using testing::EdgePath;
using testing::InstanceA;
using testing::ProfileOf;

using Ids = std::vector<std::string>;

OptimumDecomposition Decompose(const Game& game, const StrategyProfile& o) {
  return DecomposeOptimum(game, o);
}

TEST(EraseLoopsTest, CutsBackToFirstVisit) {
  const Game game = testing::SmallBridge();
  const int s2 = *game.FindVertex("s2");
  // s2 a s1 a b t1 b t2
  const Path walk = EdgePath(game, {"s2a", "s1a", "s1a", "ab", "bt1", "bt1",
                                    "bt2"});
  EXPECT_EQ(EdgeIds(game, EraseLoops(game, walk, s2)),
            (Ids{"s2a", "ab", "bt2"}));
  EXPECT_TRUE(EraseLoops(game, {}, s2).empty());
}

TEST(CoreDeviationTest, InstanceAIsTheEquilibrium) {
  const Game game = InstanceA();
  const auto n = ProfileOf(game, {{"e1"}, {"e1"}});
  const auto dec = Decompose(game, n);
  const DeviationProfile s = BuildCoreDeviation(game, n, dec, 0);
  EXPECT_EQ(s.profile, n);
  EXPECT_EQ(s.routes[0].kind, RouteKind::kPivot);
  EXPECT_TRUE(s.shared_core);
}

TEST(CoreDeviationTest, SmallBridgeRunsAllFiveSteps) {
  const Game game = testing::SmallBridge();
  const auto n = ProfileOf(game, {{"s1a", "ab", "bt1"}, {"s2a", "ab", "bt2"}});
  const auto dec = Decompose(game, n);
  const DeviationProfile s = BuildCoreDeviation(game, n, dec, 0);
  EXPECT_EQ(s.profile.path(0), n.path(0));
  const DeviationRoute& route = s.routes[1];
  std::vector<std::pair<std::string, int>> walk;
  for (const WalkStep& step : route.walk) {
    walk.emplace_back(game.edge(step.edge).id, step.step);
  }
  const std::vector<std::pair<std::string, int>> expected = {
      {"s2a", 1}, {"s1a", 2}, {"s1a", 3}, {"ab", 3},
      {"bt1", 3}, {"bt1", 4}, {"bt2", 5}};
  EXPECT_EQ(walk, expected);
  EXPECT_EQ(EdgeIds(game, route.path), (Ids{"s2a", "ab", "bt2"}));
  EXPECT_TRUE(CheckCoreWalkClasses(game, n, dec, s).empty());
}

TEST(CoreDeviationTest, NeedsSharedCore) {
  const Game game = testing::DisjointPlayers();
  const auto n = ProfileOf(game, {{"ab"}, {"cd"}});
  EXPECT_THROW(BuildCoreDeviation(game, n, Decompose(game, n), 0),
               StructureError);
}

TEST(ForestDeviationTest, OtherComponentFallsBack) {
  const Game game = testing::DisjointPlayers();
  const auto n = ProfileOf(game, {{"ab"}, {"cd"}});
  const DeviationProfile t = BuildForestDeviation(game, n, Decompose(game, n), 0);
  EXPECT_EQ(t.routes[0].kind, RouteKind::kPivot);
  EXPECT_EQ(t.routes[1].kind, RouteKind::kFallback);
  EXPECT_EQ(t.profile.path(1), n.path(1));
}

TEST(ForestDeviationTest, FarSidePlayerKeepsOptimumPath) {
  const Game game = testing::FarSideTree();
  const auto n = ProfileOf(game, {{"AB"}, {"CD", "CE"}, {"AB", "BC"}});
  const auto dec = Decompose(game, n);
  const DeviationProfile t = BuildForestDeviation(game, n, dec, 0);
  EXPECT_EQ(t.routes[1].kind, RouteKind::kFallback);
  EXPECT_EQ(t.profile.path(1), n.path(1));
  const int bc = *game.FindEdge("BC");
  EXPECT_FALSE(t.profile.Uses(1, bc));
  const TraversalVerdict verdict = ClassifyEdgeTraversal(
      dec, bc, n.users(bc), 0, 1, RouteKind::kFallback);
  EXPECT_EQ(verdict.label, TraversalCase::kBothOutside);
  EXPECT_FALSE(verdict.may_traverse);
  // k shares i's source: the primed route is i's path then B-C.
  EXPECT_EQ(t.routes[2].kind, RouteKind::kPrime);
  EXPECT_EQ(EdgeIds(game, t.routes[2].path), (Ids{"AB", "BC"}));
  EXPECT_EQ(t.detours.at(n.users(bc)), 0);
  EXPECT_TRUE(CheckTraversalDiscipline(game, n, dec, t).empty());
}

TEST(ForestDeviationTest, DoublePrimeWhenPrimeOverlaps) {
  // i: a->b, j: b->a on the path a-b. O(s_i,s_j) = O(t_i,t_j) = a-b, so
  // the primed route is not O-cycle free; the double-primed one is.
  const Game game = testing::MakeGame({"a", "b"}, {{"ab", "a", "b", 1}},
                                      {{"i", "a", "b"}, {"j", "b", "a"}});
  const auto n = ProfileOf(game, {{"ab"}, {"ab"}});
  const DeviationProfile t = BuildForestDeviation(game, n, Decompose(game, n), 0);
  EXPECT_EQ(t.routes[1].kind, RouteKind::kDoublePrime);
  EXPECT_EQ(t.profile.path(1), n.path(1));
}

TEST(ForestDeviationTest, DirectedGamesAreRejected) {
  const Game game = testing::MakeGame({"a", "b"}, {{"ab", "a", "b", 1}},
                                      {{"1", "a", "b"}, {"2", "a", "b"}},
                                      /*directed=*/true);
  const auto n = ProfileOf(game, {{"ab"}, {"ab"}});
  const auto dec = Decompose(game, n);
  EXPECT_THROW(BuildForestDeviation(game, n, dec, 0), PreconditionError);
  EXPECT_THROW(BuildCoreDeviation(game, n, dec, 0), PreconditionError);
  EXPECT_THROW(VerifyLemma1(game, n, dec, 0), PreconditionError);
  EXPECT_THROW(VerifyLemma2(game, n, dec, 0), PreconditionError);
  EXPECT_THROW(VerifyLemma3(game, n, dec, 0), PreconditionError);
}

TEST(Lemma1Test, InstanceAHoldsWithEquality) {
  const Game game = InstanceA();
  const auto n = ProfileOf(game, {{"e1"}, {"e1"}});
  const auto dec = Decompose(game, n);
  for (int pivot = 0; pivot < 2; ++pivot) {
    const LemmaReport r = VerifyLemma1(game, n, dec, pivot);
    EXPECT_EQ(r.phi_equilibrium, Rational(3));
    EXPECT_EQ(r.phi_deviation, Rational(3));
    EXPECT_EQ(r.rhs, Rational(3));
    EXPECT_TRUE(r.holds());
    // H_2 * 2 from N, H_0 * 2 from O, nothing without the pivot.
    ASSERT_EQ(r.terms.size(), 2u);
    EXPECT_EQ(r.terms[0].sum, TermSum::kEquilibrium);
    EXPECT_EQ(r.terms[0].contribution, Rational(3));
    EXPECT_EQ(r.terms[1].sum, TermSum::kPivotOptimum);
    EXPECT_EQ(r.terms[1].harmonic_index, 0);
    EXPECT_EQ(r.terms[1].contribution, Rational(0));
  }
}

TEST(Lemma1Test, SinglePlayerDegenerates) {
  const Game game = testing::Triangle();
  const auto n = ProfileOf(game, {{"ab"}});
  const LemmaReport r = VerifyLemma1(game, n, Decompose(game, n), 0);
  EXPECT_EQ(r.phi_deviation, r.phi_equilibrium);
  EXPECT_EQ(r.rhs, Rational(1));  // H_1 |N_1| + H_0 |O_1|
  EXPECT_TRUE(r.holds());
}

TEST(Lemma1Test, NeedsSharedCore) {
  const Game game = testing::DisjointPlayers();
  const auto n = ProfileOf(game, {{"ab"}, {"cd"}});
  EXPECT_THROW(VerifyLemma1(game, n, Decompose(game, n), 0),
               PreconditionError);
}

TEST(Lemma2Test, PathGraphExactTerms) {
  const Game game = testing::PathGraph({{"1", "a", "b"}, {"2", "b", "c"}});
  const auto n = ProfileOf(game, {{"ab"}, {"bc"}});
  const auto dec = Decompose(game, n);
  EXPECT_FALSE(dec.core.has_value());
  for (int pivot = 0; pivot < 2; ++pivot) {
    const LemmaReport r = VerifyLemma2(game, n, dec, pivot);
    EXPECT_EQ(r.phi_equilibrium, Rational(2));
    EXPECT_EQ(r.phi_deviation, Rational(2));
    // H_2 * 1 + H_0 * 1 + H_1 * 1.
    EXPECT_EQ(r.rhs, Rational(5, 2));
    EXPECT_TRUE(r.holds());
  }
  EXPECT_THROW(VerifyLemma2(testing::DisjointPlayers(),
                            ProfileOf(testing::DisjointPlayers(),
                                      {{"ab"}, {"cd"}}),
                            Decompose(testing::DisjointPlayers(),
                                      ProfileOf(testing::DisjointPlayers(),
                                                {{"ab"}, {"cd"}})),
                            0),
               PreconditionError);
}

TEST(Lemma2Test, SinglePlayerDegenerates) {
  const Game game = testing::Triangle();
  const auto n = ProfileOf(game, {{"ab"}});
  const LemmaReport r = VerifyLemma2(game, n, Decompose(game, n), 0);
  EXPECT_EQ(r.rhs, Rational(1));
  EXPECT_TRUE(r.holds());
}

TEST(Lemma3Test, DisjointPlayersDecouple) {
  const Game game = testing::DisjointPlayers();
  const auto n = ProfileOf(game, {{"ab"}, {"cd"}});
  const LemmaReport r = VerifyLemma3(game, n, Decompose(game, n), 0);
  EXPECT_EQ(r.phi_equilibrium, Rational(2));
  EXPECT_EQ(r.phi_deviation, Rational(2));
  EXPECT_EQ(r.rhs, Rational(5, 2));
  EXPECT_TRUE(r.holds());
}

TEST(Lemma3Test, ConnectedOptimumMatchesLemma2) {
  const Game game = testing::FarSideTree();
  const auto n = ProfileOf(game, {{"AB"}, {"CD", "CE"}, {"AB", "BC"}});
  const auto dec = Decompose(game, n);
  for (int pivot = 0; pivot < 3; ++pivot) {
    const LemmaReport two = VerifyLemma2(game, n, dec, pivot);
    const LemmaReport three = VerifyLemma3(game, n, dec, pivot);
    EXPECT_EQ(two.rhs, three.rhs);
    EXPECT_EQ(two.phi_deviation, three.phi_deviation);
    EXPECT_EQ(two.terms.size(), three.terms.size());
    EXPECT_TRUE(three.holds());
  }
}

TEST(LemmaReportTest, JsonCarriesExactValues) {
  const Game game = InstanceA();
  const auto n = ProfileOf(game, {{"e1"}, {"e1"}});
  const LemmaReport r = VerifyLemma1(game, n, Decompose(game, n), 0);
  const auto json = nlohmann::json::parse(LemmaReportToJson(game, r));
  EXPECT_EQ(json["lemma"], 1);
  EXPECT_EQ(json["pivot"], "1");
  EXPECT_EQ(json["rhs"], "3");
  EXPECT_EQ(json["verdict"], "PASS");
  EXPECT_EQ(json["terms"].size(), 2u);
  EXPECT_NO_THROW(RequireHolds(game, r));
  LemmaReport broken = r;
  broken.upper_holds = false;
  EXPECT_THROW(RequireHolds(game, broken), VerificationError);
}

TEST(TraversalTest, CaseTable) {
  const Game game = testing::PathGraph({{"1", "a", "b"}, {"2", "a", "c"}});
  const auto o = ProfileOf(game, {{"ab"}, {"ab", "bc"}});
  const auto dec = Decompose(game, o);
  const int ab = *game.FindEdge("ab");
  const int bc = *game.FindEdge("bc");
  // bc is used by player 2 only.
  auto verdict = [&](int e, int pivot, int player, RouteKind kind) {
    return ClassifyEdgeTraversal(dec, e, o.users(e), pivot, player, kind);
  };
  EXPECT_TRUE(verdict(bc, 0, 1, RouteKind::kPrime).may_traverse);
  EXPECT_EQ(verdict(bc, 0, 1, RouteKind::kPrime).label,
            TraversalCase::kPivotOutsideMemberInside);
  EXPECT_FALSE(verdict(ab, 0, 1, RouteKind::kPrime).may_traverse);
  EXPECT_EQ(verdict(ab, 0, 1, RouteKind::kPrime).label,
            TraversalCase::kBothInside);
  EXPECT_TRUE(verdict(bc, 1, 0, RouteKind::kPrime).may_traverse);
  EXPECT_EQ(verdict(bc, 1, 0, RouteKind::kPrime).label,
            TraversalCase::kPivotInsideDetour);
  EXPECT_FALSE(verdict(bc, 1, 0, RouteKind::kFallback).may_traverse);
  EXPECT_EQ(verdict(bc, 1, 0, RouteKind::kFallback).label,
            TraversalCase::kPivotInsideFallback);
  EXPECT_THROW(ClassifyEdgeTraversal(dec, bc, AllPlayers(2), 0, 1,
                                     RouteKind::kPrime),
               PreconditionError);
}

Game DrawUndirected(std::mt19937_64& rng) {
  RandomGameOptions options;
  options.players = 2 + static_cast<int>(rng() % 2);
  options.vertices = 2 + static_cast<int>(rng() % 4);
  options.edges = options.vertices - 1 + static_cast<int>(rng() % 5);
  return RandomInstance(options, rng());
}

// Every minimizer, every pivot, every applicable lemma; plus the shared-core
// cross-checks between the two constructions.
TEST(DeviationPropertyTest, LemmasHoldOnRandomGames) {
  std::mt19937_64 rng(1234);
  int core_instances = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Game game = DrawUndirected(rng);
    const MinimizerSet minimizers = PotentialMinimizers(game);
    const auto dec = DecomposeOptimum(game, SocialOptimum(game));
    core_instances += dec.core.has_value();
    for (const StrategyProfile& n : minimizers.profiles) {
      for (int pivot = 0; pivot < game.num_players(); ++pivot) {
        const auto reports = VerifyApplicableLemmas(game, n, dec, pivot);
        for (const LemmaReport& r : reports) {
          ASSERT_TRUE(r.holds()) << LemmaReportToJson(game, r);
        }
        const DeviationProfile t = BuildForestDeviation(game, n, dec, pivot);
        ASSERT_EQ(t.profile.path(pivot), n.path(pivot));
        for (const auto& [users, count] : t.detours) {
          ASSERT_GE(count, 0);
          ASSERT_LE(count, game.num_players() - SetSize(users));
        }
        ASSERT_TRUE(CheckTraversalDiscipline(game, n, dec, t).empty());
        if (!dec.core) continue;
        const DeviationProfile s = BuildCoreDeviation(game, n, dec, pivot);
        ASSERT_EQ(s.profile.path(pivot), n.path(pivot));
        ASSERT_TRUE(CheckCoreWalkClasses(game, n, dec, s).empty());
        for (const DeviationRoute& route : t.routes) {
          ASSERT_NE(route.kind, RouteKind::kFallback);
        }
        ASSERT_LE(Potential(game, t.profile), reports.front().rhs);
      }
    }
  }
  EXPECT_GT(core_instances, 0);
}

}  // namespace
}  // namespace sndg
