#include "sndg/rational.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "sndg/errors.h"

namespace sndg {
namespace {

bool IsDecimalInteger(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator)
    : value_(numerator, denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) {
  value_.canonicalize();
}

Rational Rational::Parse(std::string_view token) {
  const auto slash = token.find('/');
  const std::string_view num = token.substr(0, slash);
  if (!IsDecimalInteger(num)) {
    throw ParseError("malformed rational '" + std::string(token) + "'");
  }
  Rational r;
  if (slash == std::string_view::npos) {
    r.value_ = mpq_class(ParseInteger(num));
    return r;
  }
  const std::string_view den = token.substr(slash + 1);
  if (!IsDecimalInteger(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational '" + std::string(token) + "'");
  }
  const mpz_class d = ParseInteger(den);
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(token) + "'");
  }
  r.value_ = mpq_class(ParseInteger(num), d);
  r.value_.canonicalize();
  return r;
}

std::string Rational::ToString() const { return value_.get_str(10); }

std::string Rational::ToDecimal(int digits) const {
  const mpf_class f(value_, 256);
  char buffer[128];
  gmp_snprintf(buffer, sizeof(buffer), "%.*Fg", digits, f.get_mpf_t());
  return buffer;
}

double Rational::ToDouble() const { return value_.get_d(); }

long double Rational::ToLongDouble() const {
  const mpf_class f(value_, 128);
  char buffer[128];
  gmp_snprintf(buffer, sizeof(buffer), "%.30Fe", f.get_mpf_t());
  return std::strtold(buffer, nullptr);
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.IsZero()) throw DomainError("division by zero");
  value_ /= other.value_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r;
  r.value_ = -a.value_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

Rational Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace sndg
