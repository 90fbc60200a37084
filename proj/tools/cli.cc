#include "cli.h"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sndg/bounds.h"
#include "sndg/deviation.h"
#include "sndg/equilibrium.h"
#include "sndg/game_io.h"
#include "sndg/generators.h"
#include "sndg/optimum.h"
#include "sndg/pipeline.h"

namespace sndg::cli {
namespace {

using Json = nlohmann::ordered_json;

struct GlobalFlags {
  std::uint64_t max_profiles = kDefaultProfileBudget;
  bool json = false;
  std::uint64_t seed = 1;
  std::string out;
  int workers = 1;
};

// Writes to --out when given, else to the command's stream.
void Emit(const GlobalFlags& flags, std::ostream& out,
          const std::string& text) {
  if (flags.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  if (!file) throw IoError("cannot open '" + flags.out + "' for writing");
  file << text;
  if (!file) throw IoError("failed writing '" + flags.out + "'");
}

std::string Exact(const Rational& value) {
  return value.ToString() + " (" + value.ToDecimal() + ")";
}

Json ExactJson(const Rational& value) {
  return Json{{"exact", value.ToString()}, {"decimal", value.ToDecimal()}};
}

Json OptionalJson(const std::optional<Rational>& value) {
  return value ? ExactJson(*value) : Json();
}

std::string FormatProfile(const Game& game, const StrategyProfile& profile) {
  std::string text = "(";
  for (int i = 0; i < game.num_players(); ++i) {
    if (i > 0) text += ", ";
    text += game.player(i).id + ":" + FormatPath(game, profile.path(i));
  }
  return text + ")";
}

Json ProfileJson(const Game& game, const StrategyProfile& profile) {
  Json paths = Json::object();
  for (int i = 0; i < game.num_players(); ++i) {
    Json edges = Json::array();
    for (int e : profile.path(i)) edges.push_back(game.edge(e).id);
    paths[game.player(i).id] = std::move(edges);
  }
  return paths;
}

// analyze ---------------------------------------------------------------

std::string Analyze(const std::string& path, const GlobalFlags& flags) {
  const Game game = ReadGameFile(path);
  const StrategySpace space = StrategySpace::Build(game);
  const EquilibriumReport report =
      PriceRatios(game, space, ScanSettings{flags.max_profiles, flags.workers});
  auto profile = [&](std::uint64_t index) {
    return space.Profile(game, index);
  };

  if (flags.json) {
    Json out;
    out["directed"] = game.directed();
    out["players"] = game.num_players();
    out["edges"] = game.num_edges();
    out["profiles"] = report.profile_count;
    out["nash_count"] = report.nash.size();
    out["price_of_stability"] = OptionalJson(report.price_of_stability);
    out["price_of_anarchy"] = OptionalJson(report.price_of_anarchy);
    out["potential_optimal_price_of_anarchy"] =
        OptionalJson(report.potential_optimal_price_of_anarchy);
    out["optimum"] = {{"cost", ExactJson(report.optimum_cost)},
                      {"profile", ProfileJson(game, profile(report.optimum))}};
    out["best_nash"] = {
        {"cost", ExactJson(report.best_nash_cost)},
        {"profile", ProfileJson(game, profile(report.best_nash))}};
    out["worst_nash"] = {
        {"cost", ExactJson(report.worst_nash_cost)},
        {"profile", ProfileJson(game, profile(report.worst_nash))}};
    out["min_potential"] = ExactJson(report.min_potential);
    Json minimizers = Json::array();
    for (auto index : report.minimizers) {
      minimizers.push_back(ProfileJson(game, profile(index)));
    }
    out["potential_minimizers"] = std::move(minimizers);
    Json nash = Json::array();
    for (auto index : report.nash) {
      const StrategyProfile p = profile(index);
      nash.push_back({{"cost", ExactJson(SocialCost(game, p))},
                      {"profile", ProfileJson(game, p)}});
    }
    out["nash"] = std::move(nash);
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  auto ratio = [](const std::optional<Rational>& r) {
    return r ? Exact(*r) : std::string("undefined (optimum cost 0)");
  };
  out << (game.directed() ? "directed" : "undirected") << " game, "
      << game.num_players() << " players, " << game.num_edges() << " edges\n";
  out << "profiles: " << report.profile_count << '\n';
  out << "nash equilibria: " << report.nash.size() << '\n';
  out << "PoS: " << ratio(report.price_of_stability) << '\n';
  out << "PoA: " << ratio(report.price_of_anarchy) << '\n';
  out << "POPoA: " << ratio(report.potential_optimal_price_of_anarchy) << '\n';
  out << "optimum: " << Exact(report.optimum_cost) << ' '
      << FormatProfile(game, profile(report.optimum)) << '\n';
  out << "best NE: " << Exact(report.best_nash_cost) << ' '
      << FormatProfile(game, profile(report.best_nash)) << '\n';
  out << "worst NE: " << Exact(report.worst_nash_cost) << ' '
      << FormatProfile(game, profile(report.worst_nash)) << '\n';
  out << "min potential: " << Exact(report.min_potential) << '\n';
  out << "potential minimizers:\n";
  for (auto index : report.minimizers) {
    out << "  " << FormatProfile(game, profile(index)) << '\n';
  }
  out << "equilibria:\n";
  for (auto index : report.nash) {
    const StrategyProfile p = profile(index);
    out << "  " << Exact(SocialCost(game, p)) << ' ' << FormatProfile(game, p)
        << '\n';
  }
  return out.str();
}

// verify-lemmas ---------------------------------------------------------

struct VerifyOutcome {
  std::string text;
  bool passed = true;
};

VerifyOutcome VerifyLemmas(const std::string& path, const GlobalFlags& flags,
                           bool all_minimizers) {
  const Game game = ReadGameFile(path);
  if (game.directed()) {
    throw PreconditionError(
        "verify-lemmas needs an undirected game; the lemmas and the forest "
        "optimum are stated for undirected graphs");
  }
  const StrategySpace space = StrategySpace::Build(game);
  const EquilibriumReport report =
      PriceRatios(game, space, ScanSettings{flags.max_profiles, flags.workers});
  const StrategyProfile optimum = space.Profile(game, report.optimum);
  const OptimumDecomposition dec = DecomposeOptimum(game, optimum);
  const size_t count = all_minimizers ? report.minimizers.size() : 1;

  VerifyOutcome outcome;
  Json runs = Json::array();
  std::ostringstream text;
  text << "optimum: " << Exact(report.optimum_cost) << ' '
       << FormatProfile(game, optimum) << '\n';
  text << "shared core: " << (dec.core ? "yes" : "no")
       << ", optimum connected: " << (dec.connected() ? "yes" : "no") << '\n';
  for (size_t m = 0; m < count; ++m) {
    const StrategyProfile minimizer =
        space.Profile(game, report.minimizers[m]);
    text << "minimizer " << FormatProfile(game, minimizer) << '\n';
    Json lemmas = Json::array();
    for (int pivot = 0; pivot < game.num_players(); ++pivot) {
      for (const LemmaReport& r :
           VerifyApplicableLemmas(game, minimizer, dec, pivot)) {
        outcome.passed = outcome.passed && r.holds();
        lemmas.push_back(Json::parse(LemmaReportToJson(game, r)));
        text << "  lemma " << static_cast<int>(r.lemma) << " pivot "
             << game.player(pivot).id << ": Phi(N)=" << r.phi_equilibrium
             << " Phi(dev)=" << r.phi_deviation << " RHS=" << r.rhs << ' '
             << (r.holds() ? "PASS" : "FAIL");
        if (!r.note.empty()) text << " (" << r.note << ')';
        text << '\n';
      }
    }
    const AggregateReport aggregate = VerifyAggregate(game, minimizer, optimum);
    outcome.passed = outcome.passed && aggregate.holds();
    text << "  aggregate: " << (aggregate.holds() ? "PASS" : "FAIL");
    if (aggregate.ratio) {
      text << " cost ratio " << Exact(*aggregate.ratio) << " <= B("
           << game.num_players() << ")=" << FormatReal(*aggregate.bound);
    }
    text << '\n';
    runs.push_back({{"minimizer", ProfileJson(game, minimizer)},
                    {"lemmas", std::move(lemmas)},
                    {"aggregate", Json::parse(AggregateReportToJson(aggregate))}});
  }
  text << "verdict: " << (outcome.passed ? "PASS" : "FAIL") << '\n';
  if (flags.json) {
    Json out;
    out["shared_core"] = dec.core.has_value();
    out["connected"] = dec.connected();
    out["optimum"] = ProfileJson(game, optimum);
    out["runs"] = std::move(runs);
    out["verdict"] = outcome.passed ? "PASS" : "FAIL";
    outcome.text = out.dump(2) + "\n";
  } else {
    outcome.text = text.str();
  }
  return outcome;
}

// bounds ----------------------------------------------------------------

std::string Bounds(const GlobalFlags& flags, long long n_max,
                   std::vector<long long> ns, const std::string& format,
                   std::optional<double> epsilon) {
  if (ns.empty()) {
    for (long long n = 2; n <= n_max; ++n) ns.push_back(n);
  }
  const std::vector<BoundRow> rows = BoundGapTable(ns);
  std::ostringstream out;
  if (flags.json || format == "json") {
    WriteBoundTableJson(out, rows, epsilon);
    return out.str();
  }
  WriteBoundTableCsv(out, rows);
  if (epsilon) {
    const auto least = LeastNBelowGap(rows, *epsilon);
    out << "# least tabulated n with gap < " << FormatReal(*epsilon) << ": "
        << (least ? std::to_string(*least) : std::string("none")) << '\n';
  }
  return out.str();
}

// fuzz ------------------------------------------------------------------

int Fuzz(FuzzOptions options, const GlobalFlags& flags, std::ostream& out,
         std::ostream& err) {
  options.seed = flags.seed;
  options.workers = flags.workers;
  options.pipeline.budget = flags.max_profiles;
  const FuzzSummary summary = RunFuzz(options);
  if (!summary.failures.empty()) {
    const std::filesystem::path dir =
        flags.out.empty() ? "sndg-fuzz-failures" : flags.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "'");
    for (const FuzzFailure& f : summary.failures) {
      const std::string stem = "instance-" + std::to_string(f.index);
      WriteGameFile(f.game, (dir / (stem + ".json")).string());
      std::ofstream notes(dir / (stem + ".violations.txt"));
      for (const Violation& v : f.violations) {
        notes << v.check << ": " << v.detail << '\n';
      }
    }
    err << "failing instances written to " << dir.string() << '\n';
  }
  out << (flags.json ? FuzzSummaryToJson(options, summary)
                     : FormatFuzzSummary(options, summary));
  return summary.violations == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kParse: return kExitParse;
    case ErrorKind::kValidation: return kExitValidation;
    case ErrorKind::kBudget: return kExitBudget;
    case ErrorKind::kVerification: return kExitVerification;
    case ErrorKind::kPrecondition:
    case ErrorKind::kDegenerate:
    case ErrorKind::kDomain:
    case ErrorKind::kStructure:
    case ErrorKind::kGeneration:
      return kExitPrecondition;
    case ErrorKind::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact analysis of Shapley network design games"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  app.add_option("--max-profiles", flags.max_profiles,
                 "Refuse games with more strategy profiles than this");
  app.add_flag("--json", flags.json, "Machine-readable output");
  app.add_option("--seed", flags.seed, "Seed for fuzz and gen");
  app.add_option("--out", flags.out,
                 "Output file (fuzz: directory for failing instances)");
  app.add_option("--workers", flags.workers, "Worker threads")
      ->check(CLI::Range(1, 256));

  std::string instance;
  bool all_minimizers = false;
  auto* analyze = app.add_subcommand("analyze", "Equilibria and price ratios");
  analyze->add_option("instance", instance, "Game JSON file")->required();

  auto* verify = app.add_subcommand(
      "verify-lemmas", "Check the deviation lemmas and the aggregate bound");
  verify->add_option("instance", instance, "Game JSON file")->required();
  verify->add_flag("--all-minimizers", all_minimizers,
                   "Check every potential minimizer, not only the first");

  long long n_max = 10;
  std::vector<long long> ns;
  std::string format = "csv";
  std::optional<double> epsilon;
  auto* bounds = app.add_subcommand("bounds", "Tabulate B(n) against H(n/2)");
  bounds->add_option("--n-max", n_max, "Rows n = 2..n-max")
      ->check(CLI::Range(2LL, 100000000LL));
  bounds->add_option("--n", ns, "Explicit n values (repeatable)")
      ->check(CLI::Range(2LL, 1000000000LL));
  bounds->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--epsilon", epsilon,
                     "Report the least tabulated n with gap below this");

  FuzzOptions fuzz_options;
  std::string min_cost = "0";
  std::string max_cost = "3";
  auto* fuzz = app.add_subcommand("fuzz", "Seeded campaign over random games");
  fuzz->add_option("--players", fuzz_options.max_players, "Most players")
      ->check(CLI::Range(2, 64));
  fuzz->add_option("--vertices", fuzz_options.max_vertices, "Most vertices")
      ->check(CLI::Range(2, 1000));
  fuzz->add_option("--edges", fuzz_options.max_edges, "Most edges")
      ->check(CLI::Range(1, 10000));
  fuzz->add_option("--count", fuzz_options.count, "Instances")
      ->check(CLI::NonNegativeNumber);
  fuzz->add_option("--min-cost", min_cost, "Smallest edge cost");
  fuzz->add_option("--max-cost", max_cost, "Largest edge cost");
  fuzz->add_flag("--all-minimizers", fuzz_options.pipeline.all_minimizers,
                 "Check lemmas against every potential minimizer");

  auto* gen = app.add_subcommand("gen", "Write a generated game as JSON");
  gen->require_subcommand(1);
  RandomGameOptions random_options;
  std::string random_min = "0";
  std::string random_max = "3";
  auto* gen_random = gen->add_subcommand("random", "Random multigraph game");
  gen_random->add_option("--players", random_options.players, "Players")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  gen_random->add_option("--vertices", random_options.vertices, "Vertices")
      ->capture_default_str();
  gen_random->add_option("--edges", random_options.edges, "Edges")
      ->capture_default_str();
  gen_random->add_option("--min-cost", random_min, "Smallest edge cost")
      ->capture_default_str();
  gen_random->add_option("--max-cost", random_max, "Largest edge cost")
      ->capture_default_str();
  gen_random->add_flag("--directed", random_options.directed, "Directed arcs");
  int family_n = 2;
  std::string eps = "1/10";
  auto* gen_directed =
      gen->add_subcommand("directed", "Directed harmonic family");
  gen_directed->add_option("--n", family_n, "Players")->capture_default_str();
  gen_directed->add_option("--eps", eps, "Surcharge on the shared arc")
      ->capture_default_str();
  std::string bridge_cost = "1";
  std::vector<std::string> spoke_costs;
  auto* gen_bridge = gen->add_subcommand("bridge", "Shared bridge family");
  gen_bridge->add_option("--n", family_n, "Players")->capture_default_str();
  gen_bridge->add_option("--bridge-cost", bridge_cost, "Cost of the bridge")
      ->capture_default_str();
  gen_bridge->add_option("--spoke-cost", spoke_costs,
                         "One cost for all spokes or 2n costs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (analyze->parsed()) {
      Emit(flags, out, Analyze(instance, flags));
      return kExitOk;
    }
    if (verify->parsed()) {
      const VerifyOutcome outcome =
          VerifyLemmas(instance, flags, all_minimizers);
      Emit(flags, out, outcome.text);
      return outcome.passed ? kExitOk : kExitVerification;
    }
    if (bounds->parsed()) {
      Emit(flags, out, Bounds(flags, n_max, ns, format, epsilon));
      return kExitOk;
    }
    if (fuzz->parsed()) {
      fuzz_options.min_cost = Rational::Parse(min_cost);
      fuzz_options.max_cost = Rational::Parse(max_cost);
      return Fuzz(fuzz_options, flags, out, err);
    }
    if (gen->parsed()) {
      std::optional<Game> game;
      if (gen_random->parsed()) {
        random_options.min_cost = Rational::Parse(random_min);
        random_options.max_cost = Rational::Parse(random_max);
        game = RandomInstance(random_options, flags.seed);
      } else if (gen_directed->parsed()) {
        game = DirectedHarmonicFamily(family_n, Rational::Parse(eps));
      } else {
        std::vector<Rational> spokes;
        for (const std::string& s : spoke_costs) {
          spokes.push_back(Rational::Parse(s));
        }
        if (spokes.empty()) spokes.push_back(Rational(1));
        game = SharedBridgeFamily(family_n, Rational::Parse(bridge_cost),
                                  spokes);
      }
      Emit(flags, out, SaveGame(*game));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace sndg::cli
