#ifndef SNDG_PIPELINE_H_
#define SNDG_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sndg/enumeration.h"
#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg {

struct PipelineOptions {
  std::uint64_t budget = kDefaultProfileBudget;
  // Verify the lemmas against every potential minimizer, not only the first.
  bool all_minimizers = false;
};

struct Violation {
  std::string check;
  std::string detail;
};

// Everything checked on one instance, with counters for the summary.
struct InstanceResult {
  int players = 0;
  std::uint64_t profiles = 0;
  std::uint64_t minimizers = 0;
  std::uint64_t nash_checks = 0;
  std::map<int, std::uint64_t> lemma_checks;  // by lemma number
  std::uint64_t traversal_checks = 0;
  std::uint64_t aggregate_checks = 0;
  std::uint64_t ratio_checks = 0;
  bool shared_core = false;
  bool connected = false;
  std::optional<Rational> popoa;
  std::vector<Violation> violations;
};

// Optimum, minimizers (each re-checked with IsNash), lemma verifiers and
// traversal discipline for every pivot, aggregate inequalities, and
// POPoA <= B(n). Deviation checks are skipped for directed games.
// BudgetError propagates.
InstanceResult RunPipeline(const Game& game, const PipelineOptions& options);

struct FuzzOptions {
  int max_players = 3;
  int max_vertices = 5;
  int max_edges = 8;
  int count = 1000;
  std::uint64_t seed = 1;
  Rational min_cost = 0;
  Rational max_cost = 3;
  int workers = 1;
  PipelineOptions pipeline;
};

// Instance `index` of a campaign: players in [2, max_players], vertices in
// [2, max_vertices], edges in [vertices - 1, max_edges], seeded by
// MixSeed(seed, index).
Game FuzzInstance(const FuzzOptions& options, int index);

struct FuzzFailure {
  int index = 0;
  Game game;
  std::vector<Violation> violations;
};

struct FuzzSummary {
  int instances = 0;
  int skipped = 0;  // over budget or not generatable
  std::uint64_t profiles = 0;
  std::uint64_t minimizers = 0;
  std::uint64_t nash_checks = 0;
  std::map<int, std::uint64_t> lemma_checks;
  std::uint64_t traversal_checks = 0;
  std::uint64_t aggregate_checks = 0;
  std::uint64_t ratio_checks = 0;
  int shared_core_instances = 0;
  int connected_instances = 0;
  std::map<int, Rational> max_popoa;  // by player count
  std::uint64_t violations = 0;
  std::vector<FuzzFailure> failures;
  std::vector<std::string> skip_reasons;
};

FuzzSummary RunFuzz(const FuzzOptions& options);

// Deterministic text rendering (no timings).
std::string FormatFuzzSummary(const FuzzOptions& options,
                              const FuzzSummary& summary);
std::string FuzzSummaryToJson(const FuzzOptions& options,
                              const FuzzSummary& summary);

}  // namespace sndg

#endif  // SNDG_PIPELINE_H_
