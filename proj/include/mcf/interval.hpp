#pragma once

#include <string>

#include "mcf/bigint.hpp"

namespace mcf {

/// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
class RationalInterval {
 public:
  RationalInterval() = default;
  explicit RationalInterval(const BigRational& point) : lo_(point), hi_(point) {}
  RationalInterval(BigRational lo, BigRational hi);

  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool intersects(const RationalInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  /// Sign of every point of the interval, or 0 if the interval touches zero.
  int certain_sign() const;

  RationalInterval abs() const;
  RationalInterval intersect(const RationalInterval& o) const;
  RationalInterval hull(const RationalInterval& o) const;

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  /// Throws DivisionByZero when b contains zero.
  friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a);
  friend RationalInterval operator+(const RationalInterval& a, const BigRational& s);
  friend RationalInterval operator*(const BigRational& s, const RationalInterval& a);
  friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  std::string to_string() const;

 private:
  BigRational lo_{0};
  BigRational hi_{0};
};

}  // namespace mcf
