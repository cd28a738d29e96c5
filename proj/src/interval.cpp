#include "mcf/interval.hpp"

#include <algorithm>
#include <utility>

#include "mcf/errors.hpp"

namespace mcf {

RationalInterval::RationalInterval(BigRational lo, BigRational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw InputError("interval with lo > hi: " + to_string());
}

int RationalInterval::certain_sign() const {
  if (lo_ > 0) return 1;
  if (hi_ < 0) return -1;
  return 0;
}

RationalInterval RationalInterval::abs() const {
  if (lo_ >= 0) return *this;
  if (hi_ <= 0) return RationalInterval(-hi_, -lo_);
  return RationalInterval(BigRational(0), std::max(BigRational(-lo_), hi_));
}

RationalInterval RationalInterval::intersect(const RationalInterval& o) const {
  return RationalInterval(std::max(lo_, o.lo_), std::min(hi_, o.hi_));
}

RationalInterval RationalInterval::hull(const RationalInterval& o) const {
  return RationalInterval(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RationalInterval operator-(const RationalInterval& a) { return RationalInterval(-a.hi_, -a.lo_); }

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  if (a.lo_ >= 0 && b.lo_ >= 0) return RationalInterval(a.lo_ * b.lo_, a.hi_ * b.hi_);
  BigRational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return RationalInterval(*mn, *mx);
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
  if (b.contains_zero()) throw DivisionByZero("interval division by an interval containing zero");
  RationalInterval inv(1 / b.hi_, 1 / b.lo_);
  return a * inv;
}

RationalInterval operator+(const RationalInterval& a, const BigRational& s) {
  return RationalInterval(a.lo_ + s, a.hi_ + s);
}

RationalInterval operator*(const BigRational& s, const RationalInterval& a) {
  if (s >= 0) return RationalInterval(s * a.lo_, s * a.hi_);
  return RationalInterval(s * a.hi_, s * a.lo_);
}

std::string RationalInterval::to_string() const {
  return "[" + mcf::to_string(lo_) + ", " + mcf::to_string(hi_) + "]";
}

}  // namespace mcf
