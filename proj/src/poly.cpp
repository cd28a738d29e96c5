#include "mcf/poly.hpp"

#include <algorithm>
#include <utility>

#include "mcf/errors.hpp"
#include "mcf/interval.hpp"

namespace mcf {

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  strip();
}

QPoly QPoly::constant(const BigRational& c) { return QPoly({c}); }

QPoly QPoly::monomial(const BigRational& c, int degree) {
  std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1, BigRational(0));
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return BigRational(0);
  return c_[static_cast<std::size_t>(i)];
}

BigRational QPoly::eval(const BigRational& x) const {
  BigRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int QPoly::sign_at(const BigRational& x) const { return sgn(eval(x)); }

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigRational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  BigRational inv = 1 / leading();
  return inv * *this;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<BigRational> r(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a) {
  std::vector<BigRational> r(a.c_);
  for (auto& c : r) c = -c;
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRational> r(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly operator*(const BigRational& s, const QPoly& a) {
  std::vector<BigRational> r(a.c_);
  for (auto& c : r) c *= s;
  return QPoly(std::move(r));
}

QDivMod divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<BigRational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {QPoly{}, a};
  std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - db) + 1, BigRational(0));
  BigRational inv_lead = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    BigRational f = r[static_cast<std::size_t>(i)] * inv_lead;
    if (f == 0) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).remainder; }

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QXgcd xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    QPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  BigRational inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { strip(); }

void IntPoly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return BigInt(0);
  return c_[static_cast<std::size_t>(i)];
}

int IntPoly::sign_at(const BigRational& x) const {
  if (is_zero()) return 0;
  // p(a/b) * b^d = sum c_i a^i b^(d-i), b > 0; Horner from the top.
  const BigInt& a = x.get_num();
  const BigInt& b = x.get_den();
  BigInt bpow(1);
  BigInt acc = c_.back();
  for (int i = degree() - 1; i >= 0; --i) {
    bpow *= b;
    acc = acc * a + c_[static_cast<std::size_t>(i)] * bpow;
  }
  return sgn(acc);
}

BigRational IntPoly::eval(const BigRational& x) const {
  BigRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigRational(*it);
  return acc;
}

BigInt IntPoly::content() const {
  BigInt g(0);
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  BigInt g = content();
  if (c_.back() < 0) g = -g;
  std::vector<BigInt> r(c_);
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(r));
}

BigInt IntPoly::height() const {
  BigInt h(0);
  for (const auto& c : c_) h = std::max(h, BigInt(abs(c)));
  return h;
}

QPoly IntPoly::to_q() const {
  std::vector<BigRational> q;
  q.reserve(c_.size());
  for (const auto& c : c_) q.emplace_back(c);
  return QPoly(std::move(q));
}

IntPoly IntPoly::from_q(const QPoly& q) {
  BigInt l(1);
  for (const auto& c : q.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<BigInt> r;
  r.reserve(q.coeffs().size());
  for (const auto& c : q.coeffs()) {
    BigInt v = c.get_num() * (l / c.get_den());
    r.push_back(v);
  }
  return IntPoly(std::move(r)).primitive_part();
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------- Sturm

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  QPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    QPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    // Scaling by a positive constant keeps sign variations intact.
    BigRational scale = 1 / abs(r.leading());
    seq.push_back(-(scale * r));
  }
  return seq;
}

namespace {

int sign_variations(const std::vector<QPoly>& seq, const BigRational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int count_roots(const std::vector<QPoly>& sturm, const BigRational& lo, const BigRational& hi) {
  if (sturm.empty()) return 0;
  return sign_variations(sturm, lo) - sign_variations(sturm, hi);
}

int count_roots(const QPoly& p, const BigRational& lo, const BigRational& hi) {
  return count_roots(sturm_sequence(p), lo, hi);
}

BigRational cauchy_bound(const QPoly& p) {
  if (p.degree() < 1) return BigRational(1);
  BigRational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, BigRational(abs(p.coeff(i) / p.leading())));
  return m + 1;
}

namespace {

void isolate_in(const QPoly& p, const std::vector<QPoly>& sturm, BigRational lo, BigRational hi,
                std::vector<RationalInterval>& out) {
  // Invariant: neither lo nor hi is a root of p.
  int n = count_roots(sturm, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  BigRational mid = (lo + hi) / 2;
  if (p.sign_at(mid) == 0) {
    // Rational root exactly at the midpoint: record it and step around it.
    BigRational eps = (hi - lo) / 4;
    while (count_roots(sturm, mid - eps, mid + eps) > 1 || p.sign_at(mid - eps) == 0 ||
           p.sign_at(mid + eps) == 0) {
      eps /= 2;
    }
    isolate_in(p, sturm, lo, mid - eps, out);
    out.emplace_back(mid);
    isolate_in(p, sturm, mid + eps, hi, out);
    return;
  }
  isolate_in(p, sturm, lo, mid, out);
  isolate_in(p, sturm, mid, hi, out);
}

}  // namespace

std::vector<RationalInterval> isolate_real_roots(const QPoly& p) {
  std::vector<RationalInterval> out;
  if (p.degree() < 1) return out;
  QPoly sf = divmod(p, gcd(p, p.derivative())).quotient;
  auto sturm = sturm_sequence(sf);
  BigRational b = cauchy_bound(sf);
  isolate_in(sf, sturm, -b, b, out);
  return out;
}

BigRational simplest_rational_between(const BigRational& lo, const BigRational& hi) {
  if (hi < lo) return simplest_rational_between(hi, lo);
  BigInt fl = floor_of(lo);
  if (BigRational(fl) == lo) return lo;
  if (fl + 1 <= hi) {
    // An integer lies in the interval; prefer the one closest to zero.
    if (lo <= 0 && hi >= 0) return BigRational(0);
    return lo > 0 ? BigRational(fl + 1) : BigRational(floor_of(hi));
  }
  // Both in (fl, fl+1): recurse on reciprocals of the fractional parts.
  BigRational inner = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
  return BigRational(fl) + 1 / inner;
}

std::vector<BigRational> rational_roots(const IntPoly& p) {
  std::vector<BigRational> roots;
  if (p.degree() < 1) return roots;
  QPoly q = p.to_q();
  BigRational lc(abs(p.leading()));
  BigRational target = 1 / (4 * lc * lc);
  for (auto iv : isolate_real_roots(q)) {
    if (iv.is_point()) {
      roots.push_back(iv.lo());
      continue;
    }
    BigRational lo = iv.lo(), hi = iv.hi();
    int slo = q.sign_at(lo);
    while (hi - lo > target) {
      BigRational mid = (lo + hi) / 2;
      int s = q.sign_at(mid);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      if (s == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    BigRational cand = simplest_rational_between(lo, hi);
    if (q.sign_at(cand) == 0) roots.push_back(cand);
  }
  return roots;
}

}  // namespace mcf
