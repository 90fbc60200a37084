#include "sndg/pipeline.h"

#include <sstream>
#include <thread>

#include "json.hpp"
#include "sndg/bounds.h"
#include "sndg/deviation.h"
#include "sndg/equilibrium.h"
#include "sndg/errors.h"
#include "sndg/generators.h"
#include "sndg/optimum.h"

namespace sndg {
namespace {

void Add(InstanceResult& result, std::string check, std::string detail) {
  result.violations.push_back(Violation{std::move(check), std::move(detail)});
}

void CheckPivot(const Game& game, const StrategyProfile& minimizer,
                const OptimumDecomposition& dec, int pivot,
                InstanceResult& result) {
  const std::string who = "pivot " + game.player(pivot).id;
  std::optional<Rational> rhs1;
  std::optional<Rational> rhs2;
  for (const LemmaReport& report :
       VerifyApplicableLemmas(game, minimizer, dec, pivot)) {
    const int lemma = static_cast<int>(report.lemma);
    ++result.lemma_checks[lemma];
    if (!report.holds()) {
      Add(result, "lemma" + std::to_string(lemma),
          LemmaReportToJson(game, report));
    }
    if (lemma == 1) rhs1 = report.rhs;
    if (lemma == 2) rhs2 = report.rhs;
    // One component: the forest form must reduce to the connected form.
    if (lemma == 3 && rhs2 && report.rhs != *rhs2) {
      Add(result, "lemma3-reduction", who + ": " + report.rhs.ToString() +
                                          " != " + rhs2->ToString());
    }
  }

  const DeviationProfile forest =
      BuildForestDeviation(game, minimizer, dec, pivot);
  ++result.traversal_checks;
  for (const DisciplineBreach& b :
       CheckTraversalDiscipline(game, minimizer, dec, forest)) {
    Add(result, "traversal", who + ", player " + game.player(b.player).id +
                                 ", edge " + game.edge(b.edge).id + ": " +
                                 b.reason);
  }
  if (!dec.core) return;

  const DeviationProfile core =
      BuildCoreDeviation(game, minimizer, dec, pivot);
  for (const DisciplineBreach& b :
       CheckCoreWalkClasses(game, minimizer, dec, core)) {
    Add(result, "core-walk", who + ", player " + game.player(b.player).id +
                                 ": " + b.reason);
  }
  for (int j = 0; j < game.num_players(); ++j) {
    if (forest.routes[j].kind == RouteKind::kFallback) {
      Add(result, "core-forest-tag",
          who + ": player " + game.player(j).id + " fell back to O_j");
    }
  }
  const Rational phi_forest = Potential(game, forest.profile);
  if (rhs1 && phi_forest > *rhs1) {
    Add(result, "core-forest-bound",
        who + ": " + phi_forest.ToString() + " > " + rhs1->ToString());
  }
  if (rhs1 && rhs2 && *rhs2 > *rhs1) {
    Add(result, "lemma2-vs-lemma1",
        who + ": " + rhs2->ToString() + " > " + rhs1->ToString());
  }
}

}  // namespace

InstanceResult RunPipeline(const Game& game, const PipelineOptions& options) {
  InstanceResult result;
  result.players = game.num_players();
  const StrategySpace space = StrategySpace::Build(game);
  EquilibriumReport report;
  try {
    report = PriceRatios(game, space, ScanSettings{options.budget, 1});
  } catch (const InternalError& e) {
    Add(result, "scan", e.what());
    return result;
  }
  result.profiles = report.profile_count;
  result.minimizers = report.minimizers.size();
  result.popoa = report.potential_optimal_price_of_anarchy;

  std::vector<StrategyProfile> minimizers;
  for (std::uint64_t index : report.minimizers) {
    minimizers.push_back(space.Profile(game, index));
    const NashVerdict verdict = IsNash(game, minimizers.back());
    ++result.nash_checks;
    if (!verdict.is_nash) {
      Add(result, "minimizer-nash",
          "profile " + std::to_string(index) + ": player " +
              game.player(*verdict.player).id + " improves " +
              verdict.current_cost.ToString() + " -> " +
              verdict.deviation_cost.ToString());
    }
  }

  if (game.num_players() >= 2 && result.popoa) {
    ++result.ratio_checks;
    const long double bound = PosUpperBoundLong(game.num_players());
    if (result.popoa->ToLongDouble() > bound + kBoundSlack) {
      Add(result, "popoa-bound", result.popoa->ToString() + " > " +
                                     FormatReal(bound));
    }
  }
  if (game.directed()) return result;

  const StrategyProfile optimum = space.Profile(game, report.optimum);
  const OptimumDecomposition dec = DecomposeOptimum(game, optimum);
  result.shared_core = dec.core.has_value();
  result.connected = dec.connected();
  const size_t checked = options.all_minimizers ? minimizers.size() : 1;
  for (size_t m = 0; m < checked; ++m) {
    for (int pivot = 0; pivot < game.num_players(); ++pivot) {
      CheckPivot(game, minimizers[m], dec, pivot, result);
    }
    const AggregateReport aggregate =
        VerifyAggregate(game, minimizers[m], optimum);
    ++result.aggregate_checks;
    if (!aggregate.holds()) {
      Add(result, "aggregate", AggregateReportToJson(aggregate));
    }
  }
  return result;
}

Game FuzzInstance(const FuzzOptions& options, int index) {
  std::mt19937_64 rng(MixSeed(options.seed, static_cast<std::uint64_t>(index)));
  RandomGameOptions game;
  game.players = static_cast<int>(UniformInt(rng, 2, options.max_players));
  game.vertices = static_cast<int>(UniformInt(rng, 2, options.max_vertices));
  game.edges = static_cast<int>(
      UniformInt(rng, game.vertices - 1, options.max_edges));
  game.min_cost = options.min_cost;
  game.max_cost = options.max_cost;
  return RandomInstance(game, rng());
}

namespace {

struct Slot {
  std::optional<Game> game;
  std::optional<InstanceResult> result;
  std::string skip;
};

Slot RunSlot(const FuzzOptions& options, int index) {
  Slot slot;
  try {
    slot.game = FuzzInstance(options, index);
    slot.result = RunPipeline(*slot.game, options.pipeline);
  } catch (const GenerationError& e) {
    slot.skip = e.what();
  } catch (const BudgetError& e) {
    slot.skip = e.what();
  } catch (const Error& e) {
    // Anything else thrown by the pipeline is itself a finding.
    InstanceResult result;
    result.violations.push_back(
        Violation{std::string("error:") + ErrorKindName(e.kind()), e.what()});
    slot.result = std::move(result);
  }
  return slot;
}

}  // namespace

FuzzSummary RunFuzz(const FuzzOptions& options) {
  if (options.max_players < 2 || options.max_vertices < 2 ||
      options.max_edges < options.max_vertices - 1 || options.count < 0) {
    throw DomainError(
        "fuzz needs players >= 2, vertices >= 2, edges >= vertices - 1");
  }
  std::vector<Slot> slots(options.count);
  const int workers = std::max(1, std::min(options.workers, options.count));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (int k = w; k < options.count; k += workers) {
        slots[k] = RunSlot(options, k);
      }
    });
  }
  for (std::thread& t : threads) t.join();

  FuzzSummary summary;
  for (int k = 0; k < options.count; ++k) {
    Slot& slot = slots[k];
    if (!slot.result) {
      ++summary.skipped;
      summary.skip_reasons.push_back("instance " + std::to_string(k) + ": " +
                                     slot.skip);
      continue;
    }
    const InstanceResult& r = *slot.result;
    ++summary.instances;
    summary.profiles += r.profiles;
    summary.minimizers += r.minimizers;
    summary.nash_checks += r.nash_checks;
    for (const auto& [lemma, count] : r.lemma_checks) {
      summary.lemma_checks[lemma] += count;
    }
    summary.traversal_checks += r.traversal_checks;
    summary.aggregate_checks += r.aggregate_checks;
    summary.ratio_checks += r.ratio_checks;
    summary.shared_core_instances += r.shared_core;
    summary.connected_instances += r.connected;
    if (r.popoa) {
      auto [it, inserted] = summary.max_popoa.emplace(r.players, *r.popoa);
      if (!inserted && *r.popoa > it->second) it->second = *r.popoa;
    }
    if (!r.violations.empty()) {
      summary.violations += r.violations.size();
      summary.failures.push_back(FuzzFailure{k, *slot.game, r.violations});
    }
  }
  return summary;
}

std::string FormatFuzzSummary(const FuzzOptions& o, const FuzzSummary& s) {
  std::ostringstream out;
  out << "fuzz seed=" << o.seed << " count=" << o.count
      << " players<=" << o.max_players << " vertices<=" << o.max_vertices
      << " edges<=" << o.max_edges << " costs=[" << o.min_cost << ','
      << o.max_cost << "]\n";
  out << "instances: " << s.instances << '\n';
  out << "skipped: " << s.skipped << '\n';
  out << "profiles: " << s.profiles << '\n';
  out << "minimizers: " << s.minimizers << '\n';
  out << "nash checks: " << s.nash_checks << '\n';
  for (const auto& [lemma, count] : s.lemma_checks) {
    out << "lemma " << lemma << " checks: " << count << '\n';
  }
  out << "traversal checks: " << s.traversal_checks << '\n';
  out << "aggregate checks: " << s.aggregate_checks << '\n';
  out << "bound checks: " << s.ratio_checks << '\n';
  out << "shared-core instances: " << s.shared_core_instances << '\n';
  out << "connected-optimum instances: " << s.connected_instances << '\n';
  for (const auto& [n, popoa] : s.max_popoa) {
    out << "max popoa n=" << n << ": " << popoa << " ("
        << popoa.ToDecimal() << ") bound " << FormatReal(PosUpperBoundLong(n))
        << '\n';
  }
  out << "violations: " << s.violations << '\n';
  for (const FuzzFailure& f : s.failures) {
    for (const Violation& v : f.violations) {
      out << "  instance " << f.index << " " << v.check << ": " << v.detail
          << '\n';
    }
  }
  for (const std::string& reason : s.skip_reasons) {
    out << "  skipped " << reason << '\n';
  }
  return out.str();
}

std::string FuzzSummaryToJson(const FuzzOptions& o, const FuzzSummary& s) {
  nlohmann::ordered_json out;
  out["seed"] = o.seed;
  out["count"] = o.count;
  out["max_players"] = o.max_players;
  out["max_vertices"] = o.max_vertices;
  out["max_edges"] = o.max_edges;
  out["instances"] = s.instances;
  out["skipped"] = s.skipped;
  out["profiles"] = s.profiles;
  out["minimizers"] = s.minimizers;
  out["nash_checks"] = s.nash_checks;
  nlohmann::ordered_json lemmas = nlohmann::ordered_json::object();
  for (const auto& [lemma, count] : s.lemma_checks) {
    lemmas[std::to_string(lemma)] = count;
  }
  out["lemma_checks"] = std::move(lemmas);
  out["traversal_checks"] = s.traversal_checks;
  out["aggregate_checks"] = s.aggregate_checks;
  out["bound_checks"] = s.ratio_checks;
  out["shared_core_instances"] = s.shared_core_instances;
  out["connected_instances"] = s.connected_instances;
  nlohmann::ordered_json popoa = nlohmann::ordered_json::object();
  for (const auto& [n, value] : s.max_popoa) {
    popoa[std::to_string(n)] = value.ToString();
  }
  out["max_popoa"] = std::move(popoa);
  out["violations"] = s.violations;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const FuzzFailure& f : s.failures) {
    for (const Violation& v : f.violations) {
      failures.push_back(
          {{"instance", f.index}, {"check", v.check}, {"detail", v.detail}});
    }
  }
  out["failures"] = std::move(failures);
  out["skip_reasons"] = s.skip_reasons;
  return out.dump(2) + "\n";
}

}  // namespace sndg
