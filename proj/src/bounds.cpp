#include "mcf/bounds.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "mcf/certified_log.hpp"
#include "mcf/convergents.hpp"
#include "mcf/errors.hpp"

namespace mcf {

namespace {

FieldElement constant(const FieldHandle& f, const BigInt& c) { return FieldElement::from_rational(f, BigRational(c)); }

// Number of indices 0..N for which every sequence has an entry.
std::size_t usable(const PartialQuotients& pq, std::size_t N) { return std::min(N + 1, pq.full_length()); }

}  // namespace

FieldHandle psi_field() {
  static const FieldHandle f =
      NumberField::create(IntPoly({BigInt(-1), BigInt(0), BigInt(-1), BigInt(1)}), RationalInterval(1, 2));
  return f;
}

FieldHandle eta_field(const BigInt& M) {
  if (M < 1) throw InputError("eta needs M >= 1");
  static std::mutex mu;
  static std::map<BigInt, FieldHandle> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  FieldHandle f = NumberField::create(IntPoly({BigInt(-1), BigInt(-M), BigInt(-M), BigInt(1)}),
                                      RationalInterval(BigRational(M), BigRational(M + 1)));
  cache.emplace(M, f);
  return f;
}

RationalInterval growth_constant_k(unsigned long d, unsigned long m) {
  if (d == 0 || m == 0) throw InputError("K(d, m) needs d, m >= 1");
  const unsigned bits = 192;
  RationalInterval a = log_interval(BigInt(d + 1), bits);
  RationalInterval b = log_interval(RationalInterval(make_rational(BigInt(d + 1), BigInt(d))), bits);
  RationalInterval c = log_interval(log_interval(BigInt(m + 1), bits), bits);
  return a + b + c;
}

bool loglog_below(const BigInt& c, const RationalInterval& bound) {
  if (c < 1) throw InputError("loglog_below needs c >= 1");
  if (c == 1) return true;
  for (unsigned bits = 128; bits <= 4096; bits *= 2) {
    RationalInterval l = log_interval(c, bits);
    // c >= 2, so log c > 0.69 and the outer logarithm is defined.
    RationalInterval ll = log_interval(l, bits);
    if (ll.hi() < bound.lo()) return true;
    if (ll.lo() >= bound.hi()) return false;
  }
  throw NonTerminating("log log " + to_string(c) + " against " + bound.to_string() + " not separated");
}

// ---------------------------------------------------------------- witnesses

WitnessReport approx_witnesses(const std::vector<RealValue>& x, const PartialQuotients& pq, std::size_t N) {
  if (x.size() != pq.m) throw InputError("approx_witnesses: input dimension differs from pq");
  const std::size_t m = pq.m;
  ConvergentTable tab(pq, N + 2);
  if (tab.last() < static_cast<std::ptrdiff_t>(N) + 1) {
    throw InputError("approx_witnesses: pq must reach index " + std::to_string(N + 1));
  }
  WitnessReport rep;
  rep.per_coordinate.resize(m);
  for (std::size_t n = 0; n <= N; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const Column& cur = tab.at(sn);
    const Column& nxt = tab.at(sn + 1);
    std::vector<BigInt> t = tilde(nxt, cur);
    bool all = true;
    for (std::size_t i = 0; i < m; ++i) {
      BigInt num = abs(t[i]);
      bool hit = false;
      if (num != 0) {
        BigRational r = make_rational(num, BigInt(nxt[m] * cur[m]));
        BigRational p = make_rational(cur[i], cur[m]);
        hit = compare_abs_difference(x[i], RealValue(p), r) < 0;
      }
      if (hit) rep.per_coordinate[i].push_back(n);
      all = all && hit;
    }
    if (all) rep.simultaneous.push_back(n);
    ++rep.checked;
  }
  return rep;
}

std::optional<std::size_t> window_containment(const std::vector<RealValue>& x, const PartialQuotients& pq,
                                              std::size_t N) {
  if (x.size() != pq.m) throw InputError("window_containment: input dimension differs from pq");
  const std::size_t m = pq.m;
  ConvergentTable tab(pq, N + m + 1);
  if (tab.last() < static_cast<std::ptrdiff_t>(N + m)) {
    throw InputError("window_containment: pq must reach index " + std::to_string(N + m));
  }
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      BigRational lo, hi;
      for (std::size_t k = n; k <= n + m; ++k) {
        const Column& c = tab.at(static_cast<std::ptrdiff_t>(k));
        BigRational q = make_rational(c[i], c[m]);
        if (k == n || q < lo) lo = q;
        if (k == n || q > hi) hi = q;
      }
      if (compare(x[i], lo) < 0 || compare(x[i], hi) > 0) return n;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- bounds

BoundReport bound_checks(const PartialQuotients& pq, std::size_t N, const std::optional<BoxHypothesis>& box,
                         const std::vector<RealValue>* inputs) {
  BoundReport rep;
  const std::size_t m = pq.m;
  const std::size_t count = usable(pq, N);
  if (count == 0) throw InputError("bound_checks: empty partial quotients");
  rep.depth = count - 1;

  AdmissibilityReport adm = check_admissible(pq.prefix(std::min(N + 2, pq.length())));
  if (!adm.ok()) {
    rep.violation = BoundViolation{adm.violations.front().index, "admissibility", adm.violations.front().condition};
    return rep;
  }

  const bool m2 = m == 2;
  const bool numerators = m2 && pq.at(0, 0) == 0 && pq.at(1, 0) == 0;
  if (box) {
    if (!m2) throw PreconditionViolated("box hypothesis needs m = 2");
    if (pq.at(0, 0) != box->N || pq.at(1, 0) != box->M) {
      throw PreconditionViolated("box (" + to_string(box->N) + ", " + to_string(box->M) +
                                 ") disagrees with (a_0, b_0) = (" + to_string(pq.at(0, 0)) + ", " +
                                 to_string(pq.at(1, 0)) + ")");
    }
    if (inputs != nullptr) {
      if (inputs->size() != 2) throw PreconditionViolated("box hypothesis needs two inputs");
      if (floor_exact((*inputs)[0]) != box->N || floor_exact((*inputs)[1]) != box->M) {
        throw PreconditionViolated("inputs do not lie in the box [N, N+1) x [M, M+1)");
      }
    }
  }
  rep.numerators_checked = numerators;
  rep.box_checked = box.has_value();

  ConvergentTable tab(pq, count + 1);
  bool k_set = false;
  for (std::size_t n = 0; n < count; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const Column& c = tab.at(sn);
    const BigInt& C = c[m];
    auto fail = [&](const std::string& check, const std::string& detail) {
      rep.violation = BoundViolation{n, check, detail};
    };
    for (std::size_t i = 0; i < m; ++i) {
      BigRational q = make_rational(c[i], C);
      if (!k_set || q > rep.empirical_k) rep.empirical_k = q;
      k_set = true;
    }
    if (numerators) {
      for (std::size_t i = 0; i < 2; ++i) {
        if (c[i] > C) {
          fail("numerator", std::string(i == 0 ? "A" : "B") + "_" + std::to_string(n) + " = " + to_string(c[i]) +
                                " > C_" + std::to_string(n) + " = " + to_string(C));
          return rep;
        }
      }
    }
    if (box) {
      const BigInt* lows[2] = {&box->N, &box->M};
      for (std::size_t i = 0; i < 2; ++i) {
        const BigInt& lo = *lows[i];
        const std::string name = i == 0 ? "A" : "B";
        // Closed on the right: B_1 = (M + 1) C_1 whenever a_1 = 1.
        if (lo * C > c[i] || c[i] > (lo + 1) * C) {
          fail("box", name + "_" + std::to_string(n) + " = " + to_string(c[i]) + " outside [" + to_string(lo) +
                          " C_n, " + to_string(BigInt(lo + 1)) + " C_n] with C_n = " + to_string(C));
          return rep;
        }
      }
    }
    if (m2 && tab.last() >= sn + 1 && pq.at(0, n + 1) < C) {
      std::vector<BigInt> t = tilde(tab.at(sn + 1), c);
      BigInt cap = 3 * C * C;
      for (std::size_t i = 0; i < 2; ++i) {
        if (abs(t[i]) >= cap) {
          fail("tilde", std::string(i == 0 ? "|At" : "|Bt") + "_" + std::to_string(n + 1) + "| = " +
                            to_string(BigInt(abs(t[i]))) + " >= 3 C_n^2 = " + to_string(cap));
          return rep;
        }
      }
      ++rep.tilde_checked;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- proximity

ProximityReport proximity_check(const std::vector<RealValue>& x, const std::vector<RealValue>& xp, std::size_t n) {
  if (x.size() != 2 || xp.size() != 2) throw InputError("proximity_check needs two pairs");
  ExpansionRecord r1 = expand(x, n + 1, false);
  ExpansionRecord r2 = expand(xp, n + 1, false);
  const std::size_t len = std::min(r1.pq.full_length(), r2.pq.full_length());
  for (std::size_t i = 0; i < len && i <= n; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (r1.pq.at(j, i) != r2.pq.at(j, i)) {
        throw PrefixMismatch("expansions differ at index " + std::to_string(i), i);
      }
    }
  }
  if (len <= n) {
    if (r1.pq.full_length() != r2.pq.full_length()) {
      throw PrefixMismatch("one expansion stops at index " + std::to_string(len), len);
    }
    throw InputError("expansions end before index " + std::to_string(n));
  }

  ProximityReport rep;
  rep.n = n;
  ConvergentTable tab(r1.pq, n + 1);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  rep.c_n = tab.at(sn)[2];
  rep.c_n_minus_2 = n >= 2 ? tab.at(sn - 2)[2] : BigInt(0);

  BigRational width = make_rational(BigInt(1), BigInt(rep.c_n << 20));
  rep.gap_alpha = difference_enclosure(x[0], xp[0], width).abs();
  rep.gap_beta = difference_enclosure(x[1], xp[1], width).abs();

  BigRational near = make_rational(BigInt(2), rep.c_n);
  rep.near_bound_alpha = compare_abs_difference(x[0], xp[0], near) < 0;
  rep.near_bound_beta = compare_abs_difference(x[1], xp[1], near) < 0;
  if (n >= 2) {
    BigRational far = make_rational(BigInt(1), rep.c_n_minus_2);
    rep.far_bound_alpha = compare_abs_difference(x[0], xp[0], far) < 0;
    rep.far_bound_beta = compare_abs_difference(x[1], xp[1], far) < 0;
    // 1/C_{n-2} < 2/C_n iff C_n < 2 C_{n-2}.
    int s = cmp(rep.c_n, BigInt(2 * rep.c_n_minus_2));
    rep.tighter = s < 0 ? "far" : (s > 0 ? "near" : "equal");
  } else {
    rep.far_bound_alpha = rep.far_bound_beta = true;
    rep.tighter = "near";
  }
  return rep;
}

// ---------------------------------------------------------------- growth

GrowthReport growth_check(const PartialQuotients& pq, std::size_t N, const GrowthOptions& opt) {
  GrowthReport rep;
  const std::size_t m = pq.m;
  const std::size_t count = usable(pq, N);
  if (count == 0) throw InputError("growth_check: empty partial quotients");
  rep.depth = count - 1;
  ConvergentTable tab(pq, count);
  auto C = [&](std::size_t n) -> const BigInt& { return tab.at(static_cast<std::ptrdiff_t>(n))[m]; };

  if (m == 2) {
    rep.psi_checked = true;
    FieldHandle f = psi_field();
    FieldElement psi = FieldElement::generator(f);
    FieldElement p = psi.pow(-2);  // psi^(n-2)
    for (std::size_t n = 0; n < count; ++n, p = p * psi) {
      if (exact_sign(constant(f, C(n)) - p) <= 0) {
        rep.psi_violation = GrowthFailure{n, "C_" + std::to_string(n) + " = " + to_string(C(n)) +
                                                 " is not above psi^" + std::to_string(static_cast<long>(n) - 2)};
        break;
      }
    }
  }

  if (opt.max_quotient) {
    if (m != 2) throw InputError("the eta bound needs m = 2");
    const BigInt& M = *opt.max_quotient;
    for (std::size_t n = 1; n < count; ++n) {
      for (std::size_t j = 0; j < m; ++j) {
        if (pq.at(j, n) > M) {
          throw HypothesisViolated("quotient " + to_string(pq.at(j, n)) + " at index " + std::to_string(n) +
                                       " exceeds M = " + to_string(M),
                                   n);
        }
      }
    }
    rep.eta_checked = true;
    FieldHandle f = eta_field(M);
    FieldElement eta = FieldElement::generator(f);
    FieldElement p = FieldElement::from_rational(f, BigRational(1));
    for (std::size_t n = 0; n < count; ++n, p = p * eta) {
      if (exact_sign(p - constant(f, C(n))) < 0) {
        rep.eta_violation = GrowthFailure{n, "C_" + std::to_string(n) + " = " + to_string(C(n)) +
                                                 " exceeds eta^" + std::to_string(n)};
        break;
      }
    }
  }

  if (opt.d) {
    const unsigned long d = *opt.d;
    if (d == 0) throw InputError("d must be at least 1");
    if (count >= 2 && C(1) >= static_cast<unsigned long>(m + 1)) {
      throw HypothesisViolated("C_1 = " + to_string(C(1)) + " is not below m + 1", 1);
    }
    for (std::size_t n = 1; n + 1 < count; ++n) {
      if (pq.at(0, n + 1) >= ipow(C(n), d)) {
        throw HypothesisViolated("a_" + std::to_string(n + 1) + " = " + to_string(pq.at(0, n + 1)) +
                                     " is not below C_" + std::to_string(n) + "^" + std::to_string(d),
                                 n + 1);
      }
    }
    rep.loglog_checked = true;
    rep.k = growth_constant_k(d, m);
    for (std::size_t n = 1; n + 1 < count; ++n) {
      RationalInterval bound = BigRational(static_cast<unsigned long>(n)) * rep.k;
      if (!loglog_below(C(n + 1), bound)) {
        rep.loglog_violation = GrowthFailure{n, "log log C_" + std::to_string(n + 1) + " >= K * " + std::to_string(n)};
        break;
      }
    }
  }
  return rep;
}

}  // namespace mcf
