#include "sndg/bounds.h"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "sndg/arithmetic.h"
#include "sndg/errors.h"

namespace sndg {
namespace {

void RequirePlayers(long long n) {
  if (n < 2) {
    throw DomainError("bound formulas need n >= 2, got " + std::to_string(n));
  }
}

// Exact per-level costs |P^l| for l = 0..n.
std::vector<Rational> LevelVector(const Game& game,
                                  const StrategyProfile& profile) {
  std::vector<Rational> levels(game.num_players() + 1);
  const UsagePartition partition = ComputeUsagePartition(game, profile);
  for (const auto& [l, cost] : partition.levels) levels[l] = cost;
  return levels;
}

long double RealX(long long n) {
  const long double h = HarmonicRealLong(static_cast<long double>(n));
  return (n - h) / (h - 1);
}

}  // namespace

Rational MixingWeight(int n) {
  RequirePlayers(n);
  const Rational h = HarmonicInt(n);
  return (Rational(n) - h) / (h - 1);
}

BoundTerms::BoundTerms(int n) : n_(n) {
  RequirePlayers(n);
  harmonic_ = HarmonicTable(n);
  x_ = (Rational(n) - harmonic_[n]) / (harmonic_[n] - 1);
}

void BoundTerms::CheckLevel(int l) const {
  if (l < 1 || l > n_) {
    throw DomainError("level " + std::to_string(l) + " outside 1.." +
                      std::to_string(n_));
  }
}

Rational BoundTerms::alpha(int l) const {
  CheckLevel(l);
  return (Rational(n_) + x_) * harmonic_[l] - Rational(l) * harmonic_[n_];
}

Rational BoundTerms::beta(int l) const {
  CheckLevel(l);
  return Rational(l) * harmonic_[n_ - l] +
         (Rational(n_) + x_ - l) * harmonic_[l];
}

Rational BoundTerms::theta(int l) const {
  CheckLevel(l);
  return Rational(l) * harmonic_[n_ - l] + Rational(n_ - l) * harmonic_[l];
}

Rational Alpha(int l, int n) { return BoundTerms(n).alpha(l); }
Rational Beta(int l, int n) { return BoundTerms(n).beta(l); }
Rational Theta(int l, int n) { return BoundTerms(n).theta(l); }

long double PosUpperBoundLong(long long n) {
  RequirePlayers(n);
  long double x = 0;
  long double h_n = 0;
  if (n <= 1000) {
    const BoundTerms terms(static_cast<int>(n));
    x = terms.x().ToLongDouble();
    h_n = terms.harmonic(static_cast<int>(n)).ToLongDouble();
  } else {
    x = RealX(n);
    h_n = HarmonicRealLong(static_cast<long double>(n));
  }
  const long double m = n + x;
  return m / (m - h_n) * HarmonicRealLong(m / 2);
}

double PosUpperBound(int n) {
  return static_cast<double>(PosUpperBoundLong(n));
}

AggregateReport VerifyAggregate(const Game& game,
                                const StrategyProfile& equilibrium,
                                const StrategyProfile& optimum) {
  if (game.directed()) {
    throw PreconditionError(
        "aggregate bound check is defined for undirected games only");
  }
  const int n = game.num_players();
  AggregateReport r;
  r.players = n;
  r.equilibrium_levels = LevelVector(game, equilibrium);
  r.optimum_levels = LevelVector(game, optimum);
  r.cost_equilibrium = SocialCost(game, equilibrium);
  r.cost_optimum = SocialCost(game, optimum);
  r.potential_lhs = Potential(game, equilibrium);
  r.potential_rhs = Potential(game, optimum);
  r.potential_holds = r.potential_lhs <= r.potential_rhs;
  if (n < 2) return r;

  const BoundTerms terms(n);
  const Rational& h_n = terms.harmonic(n);
  for (int l = 1; l <= n; ++l) {
    const Rational& nl = r.equilibrium_levels[l];
    const Rational& ol = r.optimum_levels[l];
    r.level_lhs += (Rational(n) * terms.harmonic(l) - Rational(l) * h_n) * nl;
    r.level_rhs += terms.theta(l) * ol;
    r.mixed_lhs += terms.alpha(l) * nl;
    r.mixed_rhs += terms.beta(l) * ol;
  }
  r.level_holds = r.level_lhs <= r.level_rhs;
  r.mixed_holds = r.mixed_lhs <= r.mixed_rhs;
  const Rational scale = Rational(n) + terms.x() - h_n;
  r.lower_chain_holds = scale * r.cost_equilibrium <= r.mixed_lhs;

  const long double m = n + terms.x().ToLongDouble();
  r.chain_lhs = scale.ToLongDouble() * r.cost_equilibrium.ToLongDouble();
  r.chain_rhs = m * HarmonicRealLong(m / 2) * r.cost_optimum.ToLongDouble();
  r.chain_holds = r.chain_lhs <= r.chain_rhs + kBoundSlack;
  if (!r.cost_optimum.IsZero()) {
    r.ratio = r.cost_equilibrium / r.cost_optimum;
    r.bound = PosUpperBoundLong(n);
    r.ratio_holds = r.ratio->ToLongDouble() <= *r.bound + kBoundSlack;
  }
  return r;
}

std::string AggregateReportToJson(const AggregateReport& r) {
  nlohmann::ordered_json out;
  out["players"] = r.players;
  auto levels = [](const std::vector<Rational>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (size_t l = 1; l < v.size(); ++l) a.push_back(v[l].ToString());
    return a;
  };
  out["equilibrium_levels"] = levels(r.equilibrium_levels);
  out["optimum_levels"] = levels(r.optimum_levels);
  out["cost_equilibrium"] = r.cost_equilibrium.ToString();
  out["cost_optimum"] = r.cost_optimum.ToString();
  out["ineq3"] = {{"lhs", r.level_lhs.ToString()},
                  {"rhs", r.level_rhs.ToString()},
                  {"holds", r.level_holds}};
  out["ineq4"] = {{"lhs", r.potential_lhs.ToString()},
                  {"rhs", r.potential_rhs.ToString()},
                  {"holds", r.potential_holds}};
  out["ineq5"] = {{"lhs", r.mixed_lhs.ToString()},
                  {"rhs", r.mixed_rhs.ToString()},
                  {"holds", r.mixed_holds}};
  out["ineq6"] = {{"holds", r.lower_chain_holds}};
  out["chain"] = {{"lhs", FormatReal(r.chain_lhs)},
                  {"rhs", FormatReal(r.chain_rhs)},
                  {"holds", r.chain_holds}};
  if (r.ratio) {
    out["ratio"] = r.ratio->ToString();
    out["bound"] = FormatReal(*r.bound);
  }
  out["ratio_holds"] = r.ratio_holds;
  out["verdict"] = r.holds() ? "PASS" : "FAIL";
  return out.dump();
}

std::vector<BoundRow> BoundGapTable(const std::vector<long long>& ns) {
  std::vector<BoundRow> rows;
  rows.reserve(ns.size());
  for (long long n : ns) {
    RequirePlayers(n);
    BoundRow row;
    row.n = n;
    if (n <= kExactRowLimit) {
      row.harmonic_n = HarmonicInt(static_cast<int>(n));
      row.x = (Rational(static_cast<long>(n)) - *row.harmonic_n) /
              (*row.harmonic_n - 1);
    }
    row.bound = PosUpperBoundLong(n);
    row.half_harmonic = HarmonicRealLong(static_cast<long double>(n) / 2);
    row.gap = row.bound - row.half_harmonic;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<long long> LeastNBelowGap(const std::vector<BoundRow>& rows,
                                        long double epsilon) {
  std::optional<long long> least;
  for (const BoundRow& row : rows) {
    if (row.gap < epsilon && (!least || row.n < *least)) least = row.n;
  }
  return least;
}

std::string FormatReal(long double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*Lg", digits, value);
  return buffer;
}

void WriteBoundTableCsv(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << "n,H_n,x,B(n),H(n/2),gap\n";
  for (const BoundRow& row : rows) {
    out << row.n << ',' << (row.harmonic_n ? row.harmonic_n->ToString() : "")
        << ',' << (row.x ? row.x->ToString() : "") << ','
        << FormatReal(row.bound) << ',' << FormatReal(row.half_harmonic) << ','
        << FormatReal(row.gap) << '\n';
  }
}

void WriteBoundTableJson(std::ostream& out, const std::vector<BoundRow>& rows,
                         std::optional<long double> epsilon) {
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const BoundRow& row : rows) {
    nlohmann::ordered_json j;
    j["n"] = row.n;
    j["H_n"] = row.harmonic_n ? row.harmonic_n->ToString() : nullptr;
    j["x"] = row.x ? row.x->ToString() : nullptr;
    j["B(n)"] = FormatReal(row.bound);
    j["H(n/2)"] = FormatReal(row.half_harmonic);
    j["gap"] = FormatReal(row.gap);
    table.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(table);
  if (epsilon) {
    doc["epsilon"] = FormatReal(*epsilon);
    const auto least = LeastNBelowGap(rows, *epsilon);
    doc["least_n_below_epsilon"] =
        least ? nlohmann::ordered_json(*least) : nlohmann::ordered_json();
  }
  out << doc.dump(2) << '\n';
}

}  // namespace sndg
