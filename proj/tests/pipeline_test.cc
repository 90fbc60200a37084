#include "sndg/pipeline.h"

#include <gtest/gtest.h>

#include "sndg/errors.h"
#include "sndg/generators.h"
#include "test_games.h"

namespace sndg {
namespace {

TEST(PipelineTest, InstanceAIsClean) {
  const InstanceResult r = RunPipeline(testing::InstanceA(), {});
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.profiles, 4u);
  EXPECT_EQ(r.minimizers, 1u);
  EXPECT_TRUE(r.shared_core);
  EXPECT_EQ(r.lemma_checks.at(1), 2u);
  EXPECT_EQ(r.lemma_checks.at(3), 2u);
  ASSERT_TRUE(r.popoa.has_value());
  EXPECT_EQ(*r.popoa, Rational(1));
}

TEST(PipelineTest, DirectedSkipsDeviationChecks) {
  const InstanceResult r =
      RunPipeline(DirectedHarmonicFamily(3, Rational(1, 10)), {});
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.lemma_checks.empty());
  EXPECT_EQ(r.nash_checks, 1u);
}

TEST(PipelineTest, BudgetPropagates) {
  PipelineOptions options;
  options.budget = 3;
  EXPECT_THROW(RunPipeline(testing::InstanceA(), options), BudgetError);
}

TEST(PipelineTest, BridgeFamilies) {
  for (int n = 2; n <= 3; ++n) {
    for (const Rational& bridge : {Rational(1), Rational(1, n), Rational(3)}) {
      PipelineOptions options;
      options.all_minimizers = true;
      const InstanceResult r =
          RunPipeline(SharedBridgeFamily(n, bridge), options);
      EXPECT_TRUE(r.violations.empty()) << r.violations.front().detail;
    }
  }
}

TEST(FuzzTest, InstanceDimensionsStayInRange) {
  FuzzOptions options;
  for (int k = 0; k < 200; ++k) {
    const Game game = FuzzInstance(options, k);
    ASSERT_GE(game.num_players(), 2);
    ASSERT_LE(game.num_players(), 3);
    ASSERT_LE(game.num_vertices(), 5);
    ASSERT_LE(game.num_edges(), 8);
    ASSERT_GE(game.num_edges(), game.num_vertices() - 1);
  }
}

TEST(FuzzTest, SummaryIsDeterministicAndClean) {
  FuzzOptions options;
  options.count = 200;
  options.seed = 7;
  const FuzzSummary a = RunFuzz(options);
  options.workers = 3;
  const FuzzSummary b = RunFuzz(options);
  EXPECT_EQ(a.violations, 0u);
  EXPECT_EQ(a.instances, 200);
  EXPECT_EQ(FormatFuzzSummary(options, a), FormatFuzzSummary(options, b));
  EXPECT_EQ(FuzzSummaryToJson(options, a), FuzzSummaryToJson(options, b));
}

TEST(FuzzTest, EmptyCampaign) {
  FuzzOptions options;
  options.count = 0;
  const FuzzSummary s = RunFuzz(options);
  EXPECT_EQ(s.instances, 0);
  EXPECT_EQ(s.violations, 0u);
}

TEST(FuzzTest, RejectsImpossibleBounds) {
  FuzzOptions options;
  options.max_vertices = 6;
  options.max_edges = 3;
  EXPECT_THROW(RunFuzz(options), DomainError);
}

}  // namespace
}  // namespace sndg
