#include "mcf/transcendence.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "mcf/bounds.hpp"
#include "mcf/certified_log.hpp"
#include "mcf/convergents.hpp"
#include "mcf/errors.hpp"
#include "mcf/number_field.hpp"

namespace mcf {

// ---------------------------------------------------------------- EntryRule

namespace {

std::vector<BigInt> parse_list(const std::string& body, const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw InputError("rule needs at least one value: " + text);
  return out;
}

unsigned long to_ulong(const BigInt& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw InputError(std::string(what) + " does not fit an unsigned machine word");
  return v.get_ui();
}

}  // namespace

EntryRule EntryRule::parse(const std::string& text, std::uint64_t seed) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("rule must look like kind:values, got " + text);
  std::string kind = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  EntryRule r;
  r.text_ = text;
  if (kind == "const") {
    r.kind_ = Kind::constant;
    r.values_ = {parse_int(body)};
  } else if (kind == "cycle") {
    r.kind_ = Kind::cycle;
    r.values_ = parse_list(body, text);
  } else if (kind == "list") {
    r.kind_ = Kind::list;
    r.values_ = parse_list(body, text);
  } else if (kind == "random") {
    r.kind_ = Kind::random;
    r.values_ = {parse_int(body)};
    if (r.values_[0] < 0 || !r.values_[0].fits_ulong_p()) throw InputError("random:max needs 0 <= max < 2^64");
    r.seed_ = seed;
    r.text_ += " seed " + std::to_string(seed);
  } else {
    throw InputError("unknown rule kind: " + kind);
  }
  return r;
}

EntryRule EntryRule::constant(BigInt v) {
  EntryRule r;
  r.kind_ = Kind::constant;
  r.text_ = "const:" + to_string(v);
  r.values_ = {std::move(v)};
  return r;
}

EntryRule EntryRule::list(std::vector<BigInt> values) {
  if (values.empty()) throw InputError("list rule needs at least one value");
  EntryRule r;
  r.kind_ = Kind::list;
  r.text_ = "list:" + std::to_string(values.size()) + " values";
  r.values_ = std::move(values);
  return r;
}

BigInt EntryRule::at(std::size_t n) const {
  switch (kind_) {
    case Kind::constant:
      return values_[0];
    case Kind::cycle:
      return values_[n % values_.size()];
    case Kind::list:
      if (n >= values_.size()) {
        throw InputError("list rule has " + std::to_string(values_.size()) + " entries, index " + std::to_string(n) +
                         " requested");
      }
      return values_[n];
    case Kind::random: {
      // Random access: one engine per index, seeded from (seed, n).
      std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                        static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) >> 32)};
      std::mt19937_64 gen(seq);
      unsigned long max = values_[0].get_ui();
      std::uint64_t v = gen();
      return BigInt(static_cast<unsigned long>(max == ~0UL ? v : v % (static_cast<std::uint64_t>(max) + 1)));
    }
  }
  return BigInt(0);
}

// ---------------------------------------------------------------- reports

bool CriterionReport::holds() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.holds; });
}

std::optional<std::size_t> CriterionReport::violated_at() const {
  for (const auto& h : hypotheses) {
    if (!h.holds) return h.first_violation;
  }
  return std::nullopt;
}

std::string CriterionReport::verdict() const { return holds() ? "hypotheses-hold-to-depth" : "violated-at"; }

// ---------------------------------------------------------------- Liouville

namespace {

struct DeltaParts {
  unsigned long p, q;
};

DeltaParts split_delta(const BigRational& delta) {
  if (delta <= 0) throw InputError("delta must be positive");
  return {to_ulong(delta.get_num(), "delta numerator"), to_ulong(delta.get_den(), "delta denominator")};
}

BigInt max_abs(const std::vector<BigInt>& v) {
  BigInt m(0);
  for (const auto& x : v) {
    BigInt a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

// Column n computed from the window of a stream positioned at n-1.
Column next_column(const ConvergentStream& s, const std::vector<BigInt>& quotients) {
  const std::size_t m = s.m();
  Column next(s.column(m));
  for (std::size_t j = 0; j < m; ++j) {
    if (quotients[j] == 0) continue;
    const Column& prev = s.column(j);
    for (std::size_t i = 0; i <= m; ++i) next[i] += quotients[j] * prev[i];
  }
  return next;
}

// Whether every lexicographic condition starting at index n holds when
// a^(1)_n = a; `entry(j, t)` supplies the other entries.
template <class Entry>
bool conditions_hold_at(std::size_t m, std::size_t n, const BigInt& a, Entry entry) {
  for (std::size_t i = 0; i + 2 <= m; ++i) {
    bool decided = false;
    for (std::size_t t = 0; t <= i + 1 && !decided; ++t) {
      BigInt lhs = t == 0 ? a : entry(t, n + t);
      BigInt rhs = t <= i ? entry(m - i - 1 + t, n + t) : BigInt(1);
      if (lhs > rhs) decided = true;
      if (lhs < rhs) return false;
    }
  }
  return true;
}

}  // namespace

PartialQuotients construct_liouville(const LiouvilleSpec& spec) {
  const std::size_t m = spec.m;
  if (m == 0) throw InputError("m must be at least 1");
  if (spec.free.size() != m - 1) {
    throw InputError("expected " + std::to_string(m - 1) + " free rules, got " + std::to_string(spec.free.size()));
  }
  const DeltaParts dp = split_delta(spec.delta);
  auto free_entry = [&](std::size_t j, std::size_t n) { return spec.free[j - 1].at(n); };

  PartialQuotients pq(m);
  pq.seqs[0].push_back(spec.a0);
  for (std::size_t j = 1; j < m; ++j) pq.seqs[j].push_back(free_entry(j, 0));
  ConvergentStream s(pq);
  s.advance();

  for (std::size_t n = 1; n <= spec.depth; ++n) {
    std::vector<BigInt> q(m, BigInt(0));
    for (std::size_t j = 1; j < m; ++j) {
      q[j] = free_entry(j, n);
      if (q[j] < 0) throw AdmissibilityConflict("free entry a^(" + std::to_string(j + 1) + ") is negative", n);
    }
    // With a^(1)_n = 0 the tilde values are already final.
    Column partial = next_column(s, q);
    BigInt t = max_abs(tilde(partial, s.column(0)));
    BigInt candidate = t * ceil_rational_power(s.column(0)[m], dp.p, dp.q) + 1;

    BigInt lower(1);
    for (std::size_t j = 1; j < m; ++j) lower = std::max(lower, q[j]);
    while (!conditions_hold_at(m, n, lower, free_entry)) ++lower;

    q[0] = std::max(candidate, lower);
    for (std::size_t j = 0; j < m; ++j) pq.seqs[j].push_back(q[j]);
    s.advance();
  }
  AdmissibilityReport r = check_admissible(pq);
  if (!r.ok()) throw AdmissibilityConflict(r.violations.front().condition, r.violations.front().index);
  return pq;
}

CriterionReport verify_liouville(const PartialQuotients& pq, const BigRational& delta, std::size_t N) {
  const DeltaParts dp = split_delta(delta);
  const std::size_t m = pq.m;
  const std::size_t count = std::min(N + 1, pq.full_length());
  CriterionReport rep;
  rep.criterion = "liouville";
  rep.depth = count == 0 ? 0 : count - 1;
  HypothesisResult h;
  h.name = "a1_n > max_i |At_n^(i)| * C_{n-1}^delta";
  ConvergentTable tab(pq, count);
  for (std::size_t n = 1; n < count; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    BigInt t = max_abs(tilde(tab.at(sn), tab.at(sn - 1)));
    const BigInt& a = pq.at(0, n);
    const BigInt& c = tab.at(sn - 1)[m];
    // a > t c^(p/q) iff a^q > t^q c^p, for a, t >= 0.
    bool ok = a > 0 && ipow(a, dp.q) > ipow(t, dp.q) * ipow(c, dp.p);
    ++h.checked;
    if (!ok && h.holds) {
      h.holds = false;
      h.first_violation = n;
      h.detail = "a_" + std::to_string(n) + " = " + to_string(a) + ", max |At| = " + to_string(t) + ", C_" +
                 std::to_string(n - 1) + " = " + to_string(c);
    }
  }
  rep.hypotheses.push_back(std::move(h));
  rep.notes.emplace_back("delta", to_string(delta));
  return rep;
}

std::vector<RothWitness> roth_scan(const std::vector<RealValue>& x, const PartialQuotients& pq,
                                   const BigRational& epsilon, std::size_t N) {
  if (epsilon == 0) {
    throw InputError("epsilon = 0 is the critical exponent 2 of Roth's theorem; the scan needs epsilon > 0");
  }
  const DeltaParts ep = split_delta(epsilon);
  if (x.size() != pq.m) throw InputError("roth_scan: input dimension differs from pq");
  const std::size_t m = pq.m;
  ConvergentTable tab(pq, N + 1);
  if (tab.last() < static_cast<std::ptrdiff_t>(N)) throw InputError("roth_scan: pq must reach index " + std::to_string(N));
  const unsigned long e = 2 * ep.q + ep.p;  // exponent (2 + epsilon) = e / q
  std::vector<RothWitness> out;
  for (std::size_t n = 0; n <= N; ++n) {
    const Column& col = tab.at(static_cast<std::ptrdiff_t>(n));
    const BigInt& c = col[m];
    const BigInt ce = ipow(c, e);
    for (std::size_t i = 0; i < m; ++i) {
      RealValue p(make_rational(col[i], c));
      bool hit = false;
      if (c == 1) {
        hit = compare_abs_difference(x[i], p, BigRational(1)) < 0;
      } else {
        bool decided = false;
        for (unsigned long s = 64; s <= 16384 && !decided; s *= 2) {
          // u = ceil(2^s c^(e/q)), so 2^s / u <= c^(-e/q) <= 2^s / (u - 1).
          BigInt scaled = ce << static_cast<mp_bitcnt_t>(s * ep.q);
          BigInt u = ceil_rational_power(scaled, 1, ep.q);
          BigInt two_s = BigInt(1) << static_cast<mp_bitcnt_t>(s);
          if (compare_abs_difference(x[i], p, make_rational(two_s, u)) < 0) {
            hit = true;
            decided = true;
          } else if (compare_abs_difference(x[i], p, make_rational(two_s, BigInt(u - 1))) >= 0) {
            decided = true;
          }
        }
        if (!decided) throw NonTerminating("roth_scan: comparison at index " + std::to_string(n) + " not separated");
      }
      if (hit) out.push_back({n, i});
    }
  }
  return out;
}

bool tilde_below_roth_bound(const PartialQuotients& pq, std::size_t n, std::size_t coordinate, const BigRational& delta) {
  const DeltaParts dp = split_delta(delta);
  const std::size_t m = pq.m;
  ConvergentTable tab(pq, n + 2);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  if (tab.last() < sn + 1) throw InputError("tilde_below_roth_bound: pq must reach index " + std::to_string(n + 1));
  BigInt t = abs(tilde(tab.at(sn + 1), tab.at(sn))[coordinate]);
  const BigInt& c0 = tab.at(sn)[m];
  const BigInt& c1 = tab.at(sn + 1)[m];
  // t / (c1 c0) < c0^-(2 + p/q) iff t^q c0^(2q + p) < (c1 c0)^q.
  return ipow(t, dp.q) * ipow(c0, 2 * dp.q + dp.p) < ipow(BigInt(c1 * c0), dp.q);
}

// ---------------------------------------------------------------- quasi-periodic

namespace {

void validate_schedule(const std::vector<ScheduleEntry>& schedule) {
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto& e = schedule[k];
    if (e.n < 1 || e.r < 1 || e.lambda < 1) {
      throw InputError("schedule entry " + std::to_string(k) + " must have positive n, r and lambda");
    }
    if (k > 0) {
      const auto& p = schedule[k - 1];
      if (e.n <= p.n) throw InputError("schedule positions must be strictly increasing");
      if (e.n < p.n + p.lambda * p.r) {
        throw ScheduleOverlap("repetition window of schedule entry " + std::to_string(k - 1) + " reaches position " +
                                  to_string(BigInt(p.n + p.lambda * p.r - 1)) + ", past n = " + to_string(e.n),
                              k);
      }
    }
  }
}

}  // namespace

PartialQuotients build_quasiperiodic(const QuasiPeriodicSpec& spec, std::size_t depth) {
  const std::size_t m = spec.m;
  if (m == 0) throw InputError("m must be at least 1");
  if (spec.base.size() != m) throw InputError("expected " + std::to_string(m) + " base rules");
  validate_schedule(spec.schedule);
  PartialQuotients pq(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t <= depth; ++t) pq.seqs[j].push_back(spec.base[j].at(t));
  }
  const BigInt last(static_cast<unsigned long>(depth));
  for (const auto& e : spec.schedule) {
    if (e.n > last) break;
    const std::size_t n = e.n.get_ui();
    BigInt end = e.n + e.lambda * e.r - 1;  // last position of the window
    const std::size_t stop = end > last ? depth : static_cast<std::size_t>(end.get_ui());
    const std::size_t r = e.r > last ? depth + 1 : static_cast<std::size_t>(e.r.get_ui());
    for (std::size_t t = n + r; t <= stop; ++t) {
      for (std::size_t j = 0; j < m; ++j) pq.seqs[j][t] = pq.seqs[j][t - r];
    }
  }
  AdmissibilityReport r = check_admissible(pq);
  if (!r.ok()) throw AdmissibilityError(r.violations.front().condition, r.violations.front().index);
  return pq;
}

std::optional<std::size_t> repetition_violation(const PartialQuotients& pq, const std::vector<ScheduleEntry>& schedule) {
  const std::size_t len = pq.full_length();
  if (len == 0) return std::nullopt;
  const BigInt last(static_cast<unsigned long>(len - 1));
  std::optional<std::size_t> first;
  for (const auto& e : schedule) {
    if (e.n + e.r > last) continue;
    const std::size_t n = e.n.get_ui();
    const std::size_t r = e.r.get_ui();
    BigInt top = e.n + (e.lambda - 1) * e.r - 1;  // last t of the range
    for (std::size_t t = n; BigInt(static_cast<unsigned long>(t)) <= top && t + r < len; ++t) {
      for (std::size_t j = 0; j < pq.m; ++j) {
        if (pq.at(j, t + r) != pq.at(j, t)) {
          if (!first || t < *first) first = t;
        }
      }
    }
  }
  return first;
}

namespace {

void require_m2(const QuasiPeriodicSpec& spec) {
  if (spec.m != 2) throw InputError("this criterion is stated for m = 2");
}

// Sign of log(x.lambda) / x.n - log(y.lambda) / y.n. Exact through
// x.lambda^y.n versus y.lambda^x.n while those stay small; otherwise from
// enclosures, empty when they are not separated.
std::optional<int> compare_log_ratios(const ScheduleEntry& x, const ScheduleEntry& y) {
  const std::size_t bits = mpz_sizeinbase(x.lambda.get_mpz_t(), 2) * mpz_sizeinbase(y.n.get_mpz_t(), 2) +
                           mpz_sizeinbase(y.lambda.get_mpz_t(), 2) * mpz_sizeinbase(x.n.get_mpz_t(), 2);
  if (bits < (std::size_t{1} << 22) && x.n.fits_ulong_p() && y.n.fits_ulong_p()) {
    int c = cmp(ipow(x.lambda, y.n.get_ui()), ipow(y.lambda, x.n.get_ui()));
    return (c > 0) - (c < 0);
  }
  RationalInterval rx = log_interval(x.lambda, 192) / RationalInterval(BigRational(x.n));
  RationalInterval ry = log_interval(y.lambda, 192) / RationalInterval(BigRational(y.n));
  if (rx.lo() > ry.hi()) return 1;
  if (rx.hi() < ry.lo()) return -1;
  return std::nullopt;
}

}  // namespace

CriterionReport main1_check(const QuasiPeriodicSpec& spec, unsigned long d, const BigRational& c, std::size_t depth) {
  require_m2(spec);
  if (d == 0) throw InputError("d must be at least 1");
  PartialQuotients pq = build_quasiperiodic(spec, depth);
  ConvergentTable tab(pq, depth + 1);
  CriterionReport rep;
  rep.criterion = "main1";
  rep.depth = depth;

  HypothesisResult h1;
  h1.name = "a_{i+1} < C_i^d";
  for (std::size_t i = 1; i < depth; ++i) {
    const BigInt& C = tab.at(static_cast<std::ptrdiff_t>(i))[2];
    ++h1.checked;
    if (pq.at(0, i + 1) >= ipow(C, d) && h1.holds) {
      h1.holds = false;
      h1.first_violation = i + 1;
      h1.detail = "a_" + std::to_string(i + 1) + " = " + to_string(pq.at(0, i + 1)) + " >= C_" + std::to_string(i) +
                  "^" + std::to_string(d) + " = " + to_string(BigInt(ipow(C, d)));
    }
  }
  rep.hypotheses.push_back(std::move(h1));

  HypothesisResult h2;
  h2.name = "r_k < c n_k";
  for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
    const auto& e = spec.schedule[k];
    ++h2.checked;
    if (BigRational(e.r) >= c * BigRational(e.n) && h2.holds) {
      h2.holds = false;
      h2.first_violation = k;
      h2.detail = "schedule entry " + std::to_string(k) + ": r = " + to_string(e.r) + ", c n = " +
                  to_string(BigRational(c * BigRational(e.n)));
    }
  }
  rep.hypotheses.push_back(std::move(h2));

  // log(lambda_k) / n_k, reported to six decimals from a certified enclosure.
  for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
    const auto& e = spec.schedule[k];
    RationalInterval r = log_interval(e.lambda, 192) / RationalInterval(BigRational(e.n));
    rep.witnesses.push_back({k, 0, to_decimal(r.midpoint(), 6)});
  }
  std::string trend = spec.schedule.size() < 2 ? "too-short" : "strictly-increasing";
  for (std::size_t k = 1; k < spec.schedule.size(); ++k) {
    std::optional<int> c = compare_log_ratios(spec.schedule[k], spec.schedule[k - 1]);
    if (c && *c > 0) continue;
    trend = c ? "not-increasing" : "undecided";
    break;
  }
  rep.notes.emplace_back("log_lambda_over_n_trend", trend);
  rep.notes.emplace_back("d", std::to_string(d));
  rep.notes.emplace_back("c", to_string(c));
  return rep;
}

ConstantVariant parse_variant(const std::string& name) {
  if (name == "statement") return ConstantVariant::statement;
  if (name == "lemma38") return ConstantVariant::lemma38;
  if (name == "proof18") return ConstantVariant::proof18;
  throw InputError("variant must be statement, lemma38 or proof18");
}

std::string variant_name(ConstantVariant v) {
  switch (v) {
    case ConstantVariant::statement:
      return "statement";
    case ConstantVariant::lemma38:
      return "lemma38";
    case ConstantVariant::proof18:
      return "proof18";
  }
  return "?";
}

RationalInterval main2_constant(const BigInt& M, ConstantVariant variant) {
  if (M < 1) throw InputError("M must be at least 1");
  FieldHandle eta = eta_field(M);
  FieldHandle psi = variant == ConstantVariant::statement ? eta_field(BigInt(1)) : psi_field();
  const BigRational factor(variant == ConstantVariant::proof18 ? 18 : 2);
  RationalInterval ratio{BigRational(1)};
  if (eta != psi && !eta->same_generator(*psi)) {
    BigRational w(1);
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 200);
    RationalInterval le = log_interval(element_interval(FieldElement::generator(eta), w), 192);
    RationalInterval lp = log_interval(element_interval(FieldElement::generator(psi), w), 192);
    ratio = le / lp;
  }
  return factor * ratio + BigRational(-1);
}

CriterionReport main2_check(const QuasiPeriodicSpec& spec, const BigInt& M, const BigInt& N_bound,
                            ConstantVariant variant, std::size_t depth) {
  require_m2(spec);
  PartialQuotients pq = build_quasiperiodic(spec, depth);
  CriterionReport rep;
  rep.criterion = "main2";
  rep.depth = depth;

  HypothesisResult h1;
  h1.name = "a_k, b_k <= M";
  for (std::size_t n = 0; n <= depth; ++n) {
    ++h1.checked;
    for (std::size_t j = 0; j < 2 && h1.holds; ++j) {
      if (pq.at(j, n) > M) {
        h1.holds = false;
        h1.first_violation = n;
        h1.detail = std::string(j == 0 ? "a_" : "b_") + std::to_string(n) + " = " + to_string(pq.at(j, n)) +
                    " > M = " + to_string(M);
      }
    }
  }
  rep.hypotheses.push_back(std::move(h1));

  HypothesisResult h2;
  h2.name = "r_k <= N";
  for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
    ++h2.checked;
    if (spec.schedule[k].r > N_bound && h2.holds) {
      h2.holds = false;
      h2.first_violation = k;
      h2.detail = "schedule entry " + std::to_string(k) + ": r = " + to_string(spec.schedule[k].r);
    }
  }
  rep.hypotheses.push_back(std::move(h2));

  RationalInterval B = main2_constant(M, variant);
  std::optional<BigRational> best;
  for (std::size_t k = 0; k < spec.schedule.size(); ++k) {
    const auto& e = spec.schedule[k];
    BigRational ratio = make_rational(e.lambda, e.n);
    if (!best || ratio > *best) best = ratio;
    std::string cmp = ratio > B.hi() ? "above-B" : (ratio <= B.lo() ? "not-above-B" : "undecided");
    rep.witnesses.push_back({k, 0, to_string(ratio) + " " + cmp});
  }
  std::string exceeds = "no-schedule";
  if (best) exceeds = *best > B.hi() ? "true" : (*best <= B.lo() ? "false" : "undecided");
  // The finite stand-in for limsup lambda_k / n_k > B; a failure is reported
  // at the depth it was evaluated to.
  HypothesisResult h3;
  h3.name = "max_k lambda_k / n_k > B";
  h3.checked = spec.schedule.size();
  if (exceeds != "true") {
    h3.holds = false;
    h3.first_violation = depth;
    h3.detail = "proxy " + (best ? to_string(*best) : std::string("none")) + " is " + exceeds + " against B";
  }
  rep.hypotheses.push_back(std::move(h3));
  rep.notes.emplace_back("variant", variant_name(variant));
  rep.notes.emplace_back("B", to_decimal(B.lo(), 6) + ".." + to_decimal(B.hi(), 6));
  rep.notes.emplace_back("max_lambda_over_n", best ? to_string(*best) : "none");
  rep.notes.emplace_back("proxy_exceeds_B", exceeds);
  return rep;
}

}  // namespace mcf
