#include "mcf/periodic_cubic.hpp"

#include <stdexcept>

#include "mcf/convergents.hpp"
#include "mcf/errors.hpp"

namespace mcf {

// ---------------------------------------------------------------- spec

const BigInt& PeriodicSpec::at(std::size_t j, std::size_t n) const {
  const auto& pre = j == 0 ? pre_a : pre_b;
  const auto& per = j == 0 ? per_a : per_b;
  if (n < pre.size()) return pre[n];
  return per[(n - pre.size()) % per.size()];
}

PartialQuotients PeriodicSpec::unroll(std::size_t length) const {
  PartialQuotients pq(2);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t n = 0; n < length; ++n) pq.seqs[j].push_back(at(j, n));
  }
  return pq;
}

void PeriodicSpec::validate() const {
  if (per_a.empty()) throw InputError("the period must have length at least 1");
  if (per_a.size() != per_b.size()) throw InputError("per_a and per_b differ in length");
  if (pre_a.size() != pre_b.size()) throw InputError("pre_a and pre_b differ in length");
  // Every condition involves indices n and n+1 only, so one period past the
  // first wrap covers all of them.
  AdmissibilityReport r = check_admissible(unroll(k() + 2 * h() + 2));
  if (!r.ok()) throw AdmissibilityError(r.violations.front().condition, r.violations.front().index);
}

// ---------------------------------------------------------------- X matrix

XMatrix x_matrix(const PeriodicSpec& spec) {
  spec.validate();
  const std::size_t k = spec.k();
  const std::size_t h = spec.h();
  PartialQuotients pq = spec.unroll(k + h);
  ConvergentTable tab(pq, k + h);
  std::vector<AuxValues> aux = aux_stream(pq, k + h);
  // aux[i] holds index i - 2.
  const auto sk = static_cast<std::ptrdiff_t>(k);
  const AuxValues& u2 = aux[static_cast<std::size_t>(sk - 2 + 2)];  // index k-2
  const AuxValues& u1 = aux[static_cast<std::size_t>(sk - 1 + 2)];  // index k-1
  const std::ptrdiff_t top = sk + static_cast<std::ptrdiff_t>(h) - 1;
  const Column& c0 = tab.at(top);
  const Column& c1 = tab.at(top - 1);
  const Column& c2 = tab.at(top - 2);
  XMatrix x;
  for (std::size_t i = 0; i < 3; ++i) {
    x[i][0] = c0[i] * u2.Bt - c1[i] * u1.Btt + c2[i] * u1.Bt;
    x[i][1] = -c0[i] * u2.At + c1[i] * u1.Att - c2[i] * u1.At;
    x[i][2] = c0[i] * u2.Ut - c1[i] * u1.Utt + c2[i] * u1.Ut;
  }
  return x;
}

// ---------------------------------------------------------------- cubics

namespace {

QPoly qp(std::initializer_list<BigInt> c) {
  std::vector<BigRational> v;
  for (const auto& x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

}  // namespace

QPoly elimination_poly(const XMatrix& X, CubicTarget target) {
  const BigInt &x11 = X[0][0], &x12 = X[0][1], &x13 = X[0][2];
  const BigInt &x21 = X[1][0], &x22 = X[1][1], &x23 = X[1][2];
  const BigInt &x31 = X[2][0], &x32 = X[2][1], &x33 = X[2][2];
  if (target == CubicTarget::beta) {
    // alpha = P(beta) / Q(beta) from the second row, substituted into the first.
    QPoly P = qp({-x23, x33 - x22, x32});
    QPoly Q = qp({x21, -x31});
    return BigRational(x31) * P * P - qp({x13, x12}) * Q * Q + qp({x33 - x11, x32}) * P * Q;
  }
  QPoly P = qp({-x13, x33 - x11, x31});
  QPoly Q = qp({x12, -x32});
  return BigRational(x32) * P * P - qp({x23, x21}) * Q * Q + qp({x33 - x22, x31}) * P * Q;
}

CubicQuartet cubic_coeffs(const XMatrix& X, CubicTarget target) {
  const BigInt &x11 = X[0][0], &x12 = X[0][1], &x13 = X[0][2];
  const BigInt &x21 = X[1][0], &x22 = X[1][1], &x23 = X[1][2];
  const BigInt &x31 = X[2][0], &x32 = X[2][1], &x33 = X[2][2];
  CubicQuartet q;
  if (target == CubicTarget::beta) {
    q.A = -x12 * x31 * x31 + x11 * x31 * x32 - x22 * x31 * x32 + x21 * x32 * x32;
    // The third term is X22^2 X31; the printed form X22 X31^2 fails the elimination check.
    q.B = 2 * x12 * x21 * x31 - x11 * x22 * x31 + x22 * x22 * x31 - x13 * x31 * x31 - x11 * x21 * x32 -
          x21 * x22 * x32 - x23 * x31 * x32 + x11 * x31 * x33 - x22 * x31 * x33 + 2 * x21 * x32 * x33;
    q.C = -x12 * x21 * x21 + x11 * x21 * x22 + 2 * x13 * x21 * x31 - x11 * x23 * x31 + 2 * x22 * x23 * x31 -
          x21 * x23 * x32 - x11 * x21 * x33 - x21 * x22 * x33 - x23 * x31 * x33 + x21 * x33 * x33;
    q.D = -x13 * x21 * x21 + x11 * x21 * x23 + x23 * x23 * x31 - x21 * x23 * x33;
  } else {
    q.A = x12 * x31 * x31 - x11 * x31 * x32 + x22 * x31 * x32 - x21 * x32 * x32;
    q.B = -x11 * x12 * x31 - x12 * x22 * x31 + x11 * x11 * x32 + 2 * x12 * x21 * x32 - x11 * x22 * x32 -
          x13 * x31 * x32 - x23 * x32 * x32 + 2 * x12 * x31 * x33 - x11 * x32 * x33 + x22 * x32 * x33;
    q.C = -x12 * x12 * x21 + x11 * x12 * x22 - x12 * x13 * x31 + 2 * x11 * x13 * x32 - x13 * x22 * x32 +
          2 * x12 * x23 * x32 - x11 * x12 * x33 - x12 * x22 * x33 - x13 * x32 * x33 + x12 * x33 * x33;
    q.D = x12 * x13 * x22 - x12 * x12 * x23 + x13 * x13 * x32 - x12 * x13 * x33;
  }

  QPoly e = elimination_poly(X, target);
  if (e.degree() > 3) throw std::logic_error("quartic terms of the elimination polynomial did not cancel");
  QPoly mine = q.poly().to_q();
  if (!(e == mine) && !(e == -mine)) {
    throw std::logic_error("closed-form cubic disagrees with the elimination polynomial");
  }
  if (q.A == 0) throw DegenerateCubic("leading coefficient vanishes; the relation has degree below 3");
  return q;
}

// ---------------------------------------------------------------- solve

namespace {

BigRational pow10_neg(unsigned e) { return make_rational(BigInt(1), ipow(BigInt(10), e)); }

// beta_0 from alpha_0 through the first X relation.
FieldElement beta_from_alpha(const XMatrix& X, const FieldElement& a) {
  FieldElement num = BigRational(X[2][0]) * a * a + BigRational(X[2][2] - X[0][0]) * a - BigRational(X[0][2]);
  FieldElement den = FieldElement::from_rational(a.field(), BigRational(X[0][1])) - BigRational(X[2][1]) * a;
  if (den.is_zero()) throw DegenerateCubic("X_12 - X_32 alpha vanishes");
  return num / den;
}

bool prefix_matches(const ExpansionRecord& r, const PeriodicSpec& spec, std::size_t steps) {
  if (!r.interruptions.empty() || r.terminated_at) return false;
  if (r.pq.full_length() < steps) return false;
  for (std::size_t n = 0; n < steps; ++n) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (r.pq.at(j, n) != spec.at(j, n)) return false;
    }
  }
  return true;
}

RationalInterval residual_enclosure(const IntPoly& p, const RationalInterval& root) {
  RationalInterval acc{BigRational(0)};
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * root + BigRational(*it);
  return acc;
}

bool isolates(const IntPoly& p, const RationalInterval& iv) {
  if (iv.is_point()) return p.sign_at(iv.lo()) == 0;
  return p.sign_at(iv.lo()) != 0 && p.sign_at(iv.hi()) != 0 && count_roots(p.to_q(), iv.lo(), iv.hi()) == 1;
}

}  // namespace

CubicCertificate solve_periodic(const PeriodicSpec& spec) {
  XMatrix X = x_matrix(spec);
  CubicQuartet qa = cubic_coeffs(X, CubicTarget::alpha);
  CubicQuartet qb = cubic_coeffs(X, CubicTarget::beta);
  IntPoly pa = qa.poly().primitive_part();
  IntPoly pb = qb.poly().primitive_part();
  for (const IntPoly* p : {&pa, &pb}) {
    auto rr = rational_roots(*p);
    if (!rr.empty()) throw DegenerateCubic("cubic " + p->to_string() + " has the rational root " + to_string(rr[0]));
  }

  const std::size_t k = spec.k();
  const std::size_t h = spec.h();
  std::size_t steps = std::max<std::size_t>(2 * (k + h), 20);

  std::vector<RationalInterval> roots = isolate_real_roots(pa.to_q());
  std::vector<FieldHandle> candidates;
  for (const auto& iv : roots) candidates.push_back(NumberField::create(pa, iv));

  std::vector<std::pair<FieldElement, FieldElement>> matched;
  for (int round = 0; round < 4; ++round) {
    matched.clear();
    std::vector<FieldHandle> keep;
    for (const auto& f : candidates) {
      FieldElement a = FieldElement::generator(f);
      FieldElement b = beta_from_alpha(X, a);
      ExpansionRecord r = expand({RealValue(a), RealValue(b)}, steps, false);
      if (prefix_matches(r, spec, steps)) {
        matched.emplace_back(a, b);
        keep.push_back(f);
      }
    }
    if (matched.size() <= 1) break;
    candidates = keep;
    steps *= 2;
  }
  if (matched.empty()) throw Error("no real root of " + pa.to_string() + " reproduces the periodic expansion");
  if (matched.size() > 1) throw RootSelectionAmbiguous("several real roots reproduce " + std::to_string(steps) + " quotients");

  CubicCertificate cert(matched[0].first, matched[0].second);
  cert.x = X;
  cert.raw_alpha = qa;
  cert.raw_beta = qb;
  cert.poly_alpha = pa;
  cert.poly_beta = pb;
  cert.height_alpha = pa.height();
  cert.height_beta = pb.height();
  cert.matched_quotients = steps;

  ConvergentTable tab(spec.unroll(k + h), k + h);
  cert.c_last = tab.at(static_cast<std::ptrdiff_t>(k + h) - 1)[2];
  const BigInt& a0 = spec.at(0, 0);
  const BigInt& b0 = spec.at(1, 0);
  if (a0 >= 0 && b0 >= 0) {
    // N = a_0 + 1 and M = b_0 + 1 bound alpha_0 and beta_0; both are 1 in the unit box.
    cert.bound = 3024 * ipow(BigInt(a0 + 1), 5) * ipow(BigInt(b0 + 1), 5) * ipow(cert.c_last, 9);
    cert.bound_holds = cert.height_alpha <= *cert.bound && cert.height_beta <= *cert.bound;
  }

  const BigRational fine = pow10_neg(60);
  const BigRational target = pow10_neg(50);
  cert.alpha_interval = cert.field->refine_to(fine);
  cert.beta_interval = element_interval(cert.beta, fine);
  cert.residual_alpha = residual_enclosure(pa, cert.alpha_interval);
  cert.residual_beta = residual_enclosure(pb, cert.beta_interval);
  bool exact = evaluate(pa, cert.alpha).is_zero() && evaluate(pb, cert.beta).is_zero();
  cert.residual_ok = exact && cert.residual_alpha.contains(BigRational(0)) &&
                     cert.residual_beta.contains(BigRational(0)) && cert.residual_alpha.abs().hi() < target &&
                     cert.residual_beta.abs().hi() < target;
  return cert;
}

// ---------------------------------------------------------------- same field

std::array<FieldElement, 2> apply_preperiod(const PeriodicSpec& spec, const FieldElement& ak, const FieldElement& bk) {
  const std::size_t k = spec.k();
  if (k == 0) return {ak, bk};
  ConvergentTable tab(spec.unroll(k), k);
  const auto sk = static_cast<std::ptrdiff_t>(k);
  const Column& p1 = tab.at(sk - 1);
  const Column& p2 = tab.at(sk - 2);
  const Column& p3 = tab.at(sk - 3);
  auto row = [&](std::size_t i) {
    return BigRational(p1[i]) * ak + BigRational(p2[i]) * bk + BigRational(p3[i]);
  };
  FieldElement den = row(2);
  return {row(0) / den, row(1) / den};
}

bool same_field_check(const PeriodicSpec& s1, const PeriodicSpec& s2) {
  if (s1.per_a != s2.per_a || s1.per_b != s2.per_b) throw PeriodMismatch("period blocks differ");
  PeriodicSpec pure{{}, {}, s1.per_a, s1.per_b};
  CubicCertificate base = solve_periodic(pure);
  for (const PeriodicSpec* s : {&s1, &s2}) {
    CubicCertificate own = solve_periodic(*s);
    auto xy = apply_preperiod(*s, base.alpha, base.beta);
    const IntPoly* polys[2] = {&own.poly_alpha, &own.poly_beta};
    const RationalInterval* ivs[2] = {&own.alpha_interval, &own.beta_interval};
    for (std::size_t i = 0; i < 2; ++i) {
      if (!evaluate(*polys[i], xy[i]).is_zero()) return false;
      if (!isolates(*polys[i], *ivs[i])) return false;
      // A root of the cubic inside an interval isolating one of its roots is that root.
      BigRational w = ivs[i]->width() / 4;
      bool inside = false;
      for (int t = 0; t < 256 && !inside; ++t, w /= 2) inside = ivs[i]->contains(element_interval(xy[i], w));
      if (!inside) return false;
    }
  }
  return true;
}

}  // namespace mcf
