#ifndef SNDG_BOUNDS_H_
#define SNDG_BOUNDS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sndg/game.h"
#include "sndg/rational.h"

namespace sndg {

// (n - H_n) / (H_n - 1). DomainError for n < 2.
Rational MixingWeight(int n);

// Per-level coefficients of the aggregated lemma inequality, all exact.
// DomainError unless 1 <= l <= n and n >= 2.
Rational Alpha(int l, int n);  // (n + x) H_l - l H_n
Rational Beta(int l, int n);   // l H_{n-l} + (n + x - l) H_l
Rational Theta(int l, int n);  // l H_{n-l} + (n - l) H_l

// Harmonic numbers and the mixing weight for one n, computed once.
class BoundTerms {
 public:
  explicit BoundTerms(int n);

  int n() const { return n_; }
  const Rational& x() const { return x_; }
  const Rational& harmonic(int k) const { return harmonic_[k]; }
  Rational alpha(int l) const;
  Rational beta(int l) const;
  Rational theta(int l) const;

 private:
  void CheckLevel(int l) const;

  int n_;
  std::vector<Rational> harmonic_;
  Rational x_;
};

// ((n+x)/(n+x-H_n)) H((n+x)/2). DomainError for n < 2.
long double PosUpperBoundLong(long long n);
double PosUpperBound(int n);

struct AggregateReport {
  int players = 0;
  // |N^l| and |O^l| for l = 0..n (index 0 unused).
  std::vector<Rational> equilibrium_levels;
  std::vector<Rational> optimum_levels;
  Rational cost_equilibrium;
  Rational cost_optimum;

  // Inequality (3): sum (n H_l - l H_n)|N^l| <= sum theta(l)|O^l|.
  Rational level_lhs;
  Rational level_rhs;
  bool level_holds = true;
  // Inequality (4): Phi(N) <= Phi(O).
  Rational potential_lhs;
  Rational potential_rhs;
  bool potential_holds = false;
  // Inequality (5): sum alpha(l)|N^l| <= sum beta(l)|O^l|.
  Rational mixed_lhs;
  Rational mixed_rhs;
  bool mixed_holds = true;
  // (6): (n+x-H_n) cost(N) <= sum alpha(l)|N^l|, exact.
  bool lower_chain_holds = true;
  // (7) and the end-to-end chain, real valued with 1e-9 slack.
  long double chain_lhs = 0;
  long double chain_rhs = 0;
  bool chain_holds = true;
  // cost(N)/cost(O) against B(n); absent when cost(O) = 0 or n = 1.
  std::optional<Rational> ratio;
  std::optional<long double> bound;
  bool ratio_holds = true;

  bool holds() const {
    return level_holds && potential_holds && mixed_holds &&
           lower_chain_holds && chain_holds && ratio_holds;
  }
};

inline constexpr long double kBoundSlack = 1e-9L;

// Checks the aggregated inequalities on a potential minimizer N and a
// forest optimum O. PreconditionError for directed games. For n = 1 only
// Phi(N) <= Phi(O) is checked.
AggregateReport VerifyAggregate(const Game& game,
                                const StrategyProfile& equilibrium,
                                const StrategyProfile& optimum);

std::string AggregateReportToJson(const AggregateReport& report);

struct BoundRow {
  long long n = 0;
  // Exact H_n and x; empty above kExactRowLimit.
  std::optional<Rational> harmonic_n;
  std::optional<Rational> x;
  long double bound = 0;       // B(n)
  long double half_harmonic = 0;  // H(n/2)
  long double gap = 0;
};

// Rows with n above this carry only the real-valued columns.
inline constexpr long long kExactRowLimit = 10000;

// One row per entry of `ns`, in the given order. DomainError for n < 2.
std::vector<BoundRow> BoundGapTable(const std::vector<long long>& ns);

// Smallest tabulated n whose gap is below `epsilon`.
std::optional<long long> LeastNBelowGap(const std::vector<BoundRow>& rows,
                                        long double epsilon);

// Columns n, H_n, x, B(n), H(n/2), gap; reals to 12 significant digits.
void WriteBoundTableCsv(std::ostream& out, const std::vector<BoundRow>& rows);
void WriteBoundTableJson(std::ostream& out, const std::vector<BoundRow>& rows,
                         std::optional<long double> epsilon = std::nullopt);

std::string FormatReal(long double value, int digits = 12);

}  // namespace sndg

#endif  // SNDG_BOUNDS_H_
