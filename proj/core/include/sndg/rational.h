#ifndef SNDG_RATIONAL_H_
#define SNDG_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sndg {

// Exact rational number of arbitrary precision, always in lowest terms with
// a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(runtime/explicit)
  Rational(long numerator, long denominator);
  explicit Rational(const mpq_class& value);
  explicit Rational(const mpz_class& value) : value_(value) {}

  // Accepts "p", "-p" and "p/q" with decimal integers. Throws ParseError.
  static Rational Parse(std::string_view token);

  // "p" for integers, "p/q" otherwise. Parse(ToString()) is the identity.
  std::string ToString() const;
  // Decimal rendering with `digits` significant digits.
  std::string ToDecimal(int digits = 12) const;
  double ToDouble() const;
  long double ToLongDouble() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool IsZero() const { return sgn(value_) == 0; }
  bool IsInteger() const { return value_.get_den() == 1; }
  int Sign() const { return sgn(value_); }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);

}  // namespace sndg

#endif  // SNDG_RATIONAL_H_
