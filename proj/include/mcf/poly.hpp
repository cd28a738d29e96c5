#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcf/bigint.hpp"

namespace mcf {

class RationalInterval;

/// Dense univariate polynomial over Q, coefficients constant term first.
/// Trailing zero coefficients are always stripped, so the zero polynomial has
/// an empty coefficient vector and degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<BigRational> coeffs);
  static QPoly constant(const BigRational& c);
  static QPoly monomial(const BigRational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational coeff(int i) const;
  const BigRational& leading() const { return c_.back(); }

  BigRational eval(const BigRational& x) const;
  int sign_at(const BigRational& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const BigRational& s, const QPoly& a);
  friend QPoly operator-(const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

 private:
  void strip();
  std::vector<BigRational> c_;
};

struct QDivMod {
  QPoly quotient;
  QPoly remainder;
};

QDivMod divmod(const QPoly& a, const QPoly& b);
QPoly rem(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0, 0) is the zero polynomial.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Extended gcd: s*a + t*b = g with g monic.
struct QXgcd {
  QPoly g, s, t;
};
QXgcd xgcd(const QPoly& a, const QPoly& b);

/// Dense polynomial with integer coefficients, constant term first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(int i) const;
  const BigInt& leading() const { return c_.back(); }

  /// Sign of p(x), computed on integers after homogenizing by den(x)^deg.
  int sign_at(const BigRational& x) const;
  BigRational eval(const BigRational& x) const;

  BigInt content() const;
  /// Content removed and leading coefficient made positive.
  IntPoly primitive_part() const;
  /// max |coefficient|.
  BigInt height() const;

  QPoly to_q() const;
  /// Clears denominators of q and returns the primitive integer polynomial.
  static IntPoly from_q(const QPoly& q);

  std::string to_string(const std::string& var = "x") const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

 private:
  void strip();
  std::vector<BigInt> c_;
};

/// Sturm chain p, p', -rem(p, p'), ...
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Number of distinct real roots of p in the open interval (lo, hi), where
/// neither endpoint is a root.
int count_roots(const std::vector<QPoly>& sturm, const BigRational& lo, const BigRational& hi);
int count_roots(const QPoly& p, const BigRational& lo, const BigRational& hi);

/// Bound B such that every real root lies in (-B, B).
BigRational cauchy_bound(const QPoly& p);

/// Isolating intervals, sorted, for the distinct real roots of p. Each returned
/// interval either has lo == hi (an exact rational root) or contains exactly
/// one root strictly inside with nonzero signs at both endpoints.
std::vector<RationalInterval> isolate_real_roots(const QPoly& p);

/// The rational with the smallest denominator in the closed interval [lo, hi].
BigRational simplest_rational_between(const BigRational& lo, const BigRational& hi);

/// Rational roots of an integer polynomial, found by isolating each real root
/// to width below 1/(2 lc^2) and testing the unique candidate with
/// denominator dividing the leading coefficient.
std::vector<BigRational> rational_roots(const IntPoly& p);

}  // namespace mcf
