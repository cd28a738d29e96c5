#include "mcf/number_field.hpp"

#include <utility>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() == b.field()) return;
  if (!a.field()->same_generator(*b.field())) {
    throw FieldMismatch("field elements belong to different number fields");
  }
}

}  // namespace

// ---------------------------------------------------------------- NumberField

NumberField::NumberField(IntPoly min_poly, RationalInterval root_interval)
    : poly_(std::move(min_poly)),
      qpoly_(poly_.to_q()),
      initial_(root_interval),
      interval_(std::move(root_interval)) {}

std::shared_ptr<const NumberField> NumberField::create(IntPoly min_poly,
                                                       RationalInterval root_interval) {
  int d = min_poly.degree();
  if (d < 2 || d > 8) {
    throw InputError("minimal polynomial degree must be in 2..8, got " + std::to_string(d));
  }
  QPoly q = min_poly.to_q();
  if (gcd(q, q.derivative()).degree() > 0) {
    throw InputError("minimal polynomial is not squarefree: " + min_poly.to_string());
  }
  // Settles irreducibility up to degree 3; higher degrees can still factor
  // into irreducible pieces of degree >= 2.
  if (!rational_roots(min_poly).empty()) {
    throw InputError("minimal polynomial has a rational root: " + min_poly.to_string());
  }
  const auto& lo = root_interval.lo();
  const auto& hi = root_interval.hi();
  int slo = min_poly.sign_at(lo);
  int shi = min_poly.sign_at(hi);
  if (slo == 0 || shi == 0) throw InputError("isolating interval endpoint is a root");
  if (slo == shi) throw InputError("minimal polynomial has equal signs at the interval endpoints");
  int roots = count_roots(q, lo, hi);
  if (roots != 1) {
    throw InputError("interval " + root_interval.to_string() + " contains " +
                     std::to_string(roots) + " roots of " + min_poly.to_string());
  }
  return std::make_shared<const NumberField>(std::move(min_poly), std::move(root_interval));
}

RationalInterval NumberField::root_interval() const {
  std::lock_guard<std::mutex> lock(mu_);
  return interval_;
}

RationalInterval NumberField::refine_to(const BigRational& width) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (interval_.width() <= width) return interval_;
  BigRational lo = interval_.lo();
  BigRational hi = interval_.hi();
  int slo = poly_.sign_at(lo);
  while (hi - lo > width) {
    BigRational mid = (lo + hi) / 2;
    int s = poly_.sign_at(mid);
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    if (s == slo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  interval_ = RationalInterval(std::move(lo), std::move(hi));
  return interval_;
}

bool NumberField::same_generator(const NumberField& other) const {
  if (this == &other) return true;
  if (!(poly_.primitive_part() == other.poly_.primitive_part())) return false;
  return root_interval().intersects(other.root_interval());
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldHandle field, std::vector<BigRational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  auto d = static_cast<std::size_t>(field_->degree());
  if (coords_.size() > d) {
    // Reduce anything longer than the power basis.
    QPoly r = rem(QPoly(coords_), field_->min_poly_q());
    coords_ = r.coeffs();
  }
  coords_.resize(d, BigRational(0));
  for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::from_rational(FieldHandle field, const BigRational& value) {
  return FieldElement(std::move(field), {value});
}

FieldElement FieldElement::generator(FieldHandle field) {
  return FieldElement(std::move(field), {BigRational(0), BigRational(1)});
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return false;
  }
  return true;
}

bool FieldElement::is_zero() const { return is_rational() && coords_[0] == 0; }

namespace {

FieldElement from_poly(const FieldHandle& f, const QPoly& p) {
  QPoly r = p.degree() >= f->degree() ? rem(p, f->min_poly_q()) : p;
  return FieldElement(f, r.coeffs());
}

}  // namespace

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero field element");
  if (is_rational()) return from_rational(field_, 1 / coords_[0]);
  QPoly a = as_poly();
  QPoly f = field_->min_poly_q();
  QXgcd r = xgcd(a, f);
  if (r.g.degree() == 0) return from_poly(field_, r.s);
  // f is reducible and shares the factor g with a. If theta is a root of g the
  // element is zero; otherwise invert modulo the cofactor that holds theta.
  RationalInterval iv = field_->root_interval();
  bool theta_in_g = iv.is_point() ? r.g.sign_at(iv.lo()) == 0
                                  : count_roots(r.g, iv.lo(), iv.hi()) > 0;
  if (theta_in_g) throw DivisionByZero("field element evaluates to zero");
  QPoly cofactor = divmod(f, r.g).quotient;
  QXgcd r2 = xgcd(rem(a, cofactor), cofactor);
  if (r2.g.degree() != 0) throw DivisionByZero("field element is not invertible");
  return from_poly(field_, r2.s);
}

FieldElement FieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = from_rational(field_, BigRational(1));
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  std::vector<BigRational> c(a.coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a) {
  std::vector<BigRational> c(a.coords_);
  for (auto& x : c) x = -x;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return from_poly(a.field_, a.as_poly() * b.as_poly());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement operator+(const FieldElement& a, const BigRational& b) {
  std::vector<BigRational> c(a.coords_);
  c[0] += b;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const BigRational& b) { return a + BigRational(-b); }

FieldElement operator*(const BigRational& s, const FieldElement& a) {
  std::vector<BigRational> c(a.coords_);
  for (auto& x : c) x *= s;
  return FieldElement(a.field_, std::move(c));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return a.coords_ == b.coords_;
}

FieldElement field_arith(FieldOp op, const FieldElement& a, const FieldElement* b) {
  if (op != FieldOp::inv && b == nullptr) throw InputError("binary field operation needs two operands");
  switch (op) {
    case FieldOp::add:
      return a + *b;
    case FieldOp::sub:
      return a - *b;
    case FieldOp::mul:
      return a * *b;
    case FieldOp::inv:
      return a.inverse();
  }
  throw InputError("unknown field operation");
}

// ---------------------------------------------------------------- real queries

RationalInterval evaluate_on_root(const QPoly& p, const NumberField& field) {
  RationalInterval t = field.root_interval();
  if (p.is_zero()) return RationalInterval(BigRational(0));
  if (t.is_point()) return RationalInterval(p.eval(t.lo()));
  const auto& c = p.coeffs();
  RationalInterval acc(c.back());
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * t + c[static_cast<std::size_t>(i)];
  return acc;
}

RationalInterval element_interval(const FieldElement& a, const BigRational& width) {
  if (width <= 0) throw InputError("element_interval: width must be positive");
  if (a.is_rational()) return RationalInterval(a.rational_value());
  const NumberField& f = *a.field();
  QPoly p = a.as_poly();
  RationalInterval out = evaluate_on_root(p, f);
  while (out.width() > width) {
    RationalInterval t = f.root_interval();
    if (t.is_point()) break;
    // Interval Horner is close to linear in the root width once it is small;
    // aim a factor of 4 below the ratio so one or two passes suffice.
    BigRational ratio = width / out.width();
    BigRational target = t.width() * ratio / 4;
    f.refine_to(target);
    out = evaluate_on_root(p, f);
  }
  return out;
}

int exact_sign(const FieldElement& a) {
  if (a.is_rational()) return sgn(a.rational_value());
  const NumberField& f = *a.field();
  QPoly p = a.as_poly();
  RationalInterval iv = evaluate_on_root(p, f);
  if (int s = iv.certain_sign(); s != 0) return s;
  RationalInterval t = f.root_interval();
  if (t.is_point()) return p.sign_at(t.lo());
  QPoly g = gcd(p, f.min_poly_q());
  if (g.degree() > 0 && count_roots(g, t.lo(), t.hi()) > 0) return 0;
  // Nonzero: shrink the enclosure until it leaves zero.
  BigRational w = iv.width();
  if (w == 0) w = 1;
  while (true) {
    w /= BigRational(BigInt(1) << 32);
    iv = element_interval(a, w);
    if (int s = iv.certain_sign(); s != 0) return s;
  }
}

BigInt floor_exact(const FieldElement& a) {
  if (a.is_rational()) return floor_of(a.rational_value());
  RationalInterval iv = element_interval(a, BigRational(1, 2));
  BigInt k = ceil_of(iv.lo());
  if (BigRational(k) > iv.hi()) return floor_of(iv.lo());
  // Exactly one integer candidate lies in the enclosure.
  return exact_sign(a - BigRational(k)) >= 0 ? k : BigInt(k - 1);
}

FieldElement evaluate(const IntPoly& p, const FieldElement& x) {
  FieldElement acc = FieldElement::from_rational(x.field(), BigRational(0));
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + BigRational(p.coeff(i));
  return acc;
}

}  // namespace mcf
