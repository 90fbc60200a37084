#ifndef SNDG_DEVIATION_H_
#define SNDG_DEVIATION_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sndg/game.h"
#include "sndg/optimum.h"
#include "sndg/rational.h"

namespace sndg {

// How a player's route in a deviation profile was obtained.
enum class RouteKind {
  kPivot,        // the pivot itself: its equilibrium path
  kPrime,        // source side -> pivot path forwards -> target side
  kDoublePrime,  // via the pivot's target, pivot path backwards
  kFallback,     // the player's own optimum path
};

const char* RouteKindName(RouteKind kind);

// One edge of an assembled walk with the construction step it came from.
// Shared-core walks use steps 1..5 (source to merge edge, merge edge to the
// pivot's source, pivot path, pivot's target to split edge, split edge to
// target); forest walks use 1..3 (connector, pivot path, connector).
// Fallback routes use step 0.
struct WalkStep {
  int edge = 0;
  int step = 0;
};

struct DeviationRoute {
  RouteKind kind = RouteKind::kFallback;
  // Before loop erasure, in the order walked (from the oriented source for
  // shared-core walks).
  std::vector<WalkStep> walk;
  // Simple s_j-t_j path in the game's own labelling.
  Path path;
};

struct DeviationProfile {
  int pivot = 0;
  // Built from the shared core (true) or from forest connectors (false).
  bool shared_core = false;
  std::vector<DeviationRoute> routes;
  // o_i(U): for every U with O_U nonempty, the number of players j outside
  // U whose route differs from O_j. Forest construction only.
  std::map<PlayerSet, int> detours;
  StrategyProfile profile;
};

// Removes closed sub-walks: scanning vertices in order, a revisited vertex
// cuts out everything since its first visit. The result is a simple path.
Path EraseLoops(const Game& game, std::span<const int> walk, int start);

// Deviation profile through the shared core (requires O^n nonempty).
// Throws StructureError without a shared core and PreconditionError for
// directed games.
DeviationProfile BuildCoreDeviation(const Game& game,
                                    const StrategyProfile& equilibrium,
                                    const OptimumDecomposition& dec,
                                    int pivot);

// Deviation profile for an arbitrary forest optimum: each player in the
// pivot's component takes the first connector-disjoint route, otherwise its
// own optimum path.
DeviationProfile BuildForestDeviation(const Game& game,
                                      const StrategyProfile& equilibrium,
                                      const OptimumDecomposition& dec,
                                      int pivot);

enum class LemmaKind {
  kSharedCore = 1,  // O^n nonempty
  kConnected = 2,   // E(O) connected
  kForest = 3,      // general forest
};

// Which of the three sums a right-hand-side term belongs to.
enum class TermSum {
  kEquilibrium,    // H_n |N_U|, pivot in U
  kPivotOptimum,   // optimum blocks containing the pivot
  kOtherOptimum,   // optimum blocks without the pivot
};

struct LemmaTerm {
  TermSum sum = TermSum::kEquilibrium;
  PlayerSet users = 0;
  int harmonic_index = 0;
  Rational block_cost;
  Rational contribution;
};

struct LemmaReport {
  LemmaKind lemma = LemmaKind::kForest;
  int pivot = 0;
  Rational phi_equilibrium;
  Rational phi_deviation;
  Rational rhs;
  std::vector<LemmaTerm> terms;
  bool lower_holds = false;   // phi_equilibrium <= phi_deviation
  bool upper_holds = false;   // phi_deviation <= rhs
  bool detour_bound_holds = true;
  // Nonempty when something other than the inequalities failed.
  std::string note;

  bool holds() const {
    return lower_holds && upper_holds && detour_bound_holds && note.empty();
  }
};

// Each verifier rebuilds its deviation profile, recomputes both sides from
// the usage partitions of N and O, and reports. They do not throw on a
// failed inequality; use RequireHolds for that.
LemmaReport VerifyLemma1(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot);
LemmaReport VerifyLemma2(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot);
LemmaReport VerifyLemma3(const Game& game, const StrategyProfile& equilibrium,
                         const OptimumDecomposition& dec, int pivot);

// Every verifier whose topological precondition holds for `dec`.
std::vector<LemmaReport> VerifyApplicableLemmas(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, int pivot);

// Throws VerificationError carrying the JSON breakdown.
void RequireHolds(const Game& game, const LemmaReport& report);

std::string LemmaReportToJson(const Game& game, const LemmaReport& report);

enum class TraversalCase {
  kPivotOutsideMemberInside,   // i not in U, j in U
  kBothOutside,                // i, j not in U
  kBothInside,                 // i, j in U
  kPivotInsideDetour,          // i in U, j not in U, route != fallback
  kPivotInsideFallback,        // i in U, j not in U, fallback route
};

const char* TraversalCaseName(TraversalCase c);

struct TraversalVerdict {
  TraversalCase label = TraversalCase::kBothOutside;
  bool may_traverse = false;
};

// Whether optimum edge e (with O-users exactly `users`) may appear in
// player j's route of the forest deviation for pivot i, for edges not on
// the pivot's equilibrium path. Throws PreconditionError if e is not in
// O_users.
TraversalVerdict ClassifyEdgeTraversal(const OptimumDecomposition& dec, int e,
                                       PlayerSet users, int pivot, int player,
                                       RouteKind kind);

struct DisciplineBreach {
  int player = 0;
  int edge = 0;
  std::string reason;
};

// Edges used against their traversal verdict.
std::vector<DisciplineBreach> CheckTraversalDiscipline(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, const DeviationProfile& deviation);

// Shared-core walk edges outside the class allowed for their step.
std::vector<DisciplineBreach> CheckCoreWalkClasses(
    const Game& game, const StrategyProfile& equilibrium,
    const OptimumDecomposition& dec, const DeviationProfile& deviation);

}  // namespace sndg

#endif  // SNDG_DEVIATION_H_
