#include "mcf/expansion.hpp"

#include <algorithm>
#include <memory>
#include <nlohmann/json.hpp>
#include <utility>

#include "linear_fractional.hpp"
#include "mcf/errors.hpp"

namespace mcf {

// ---------------------------------------------------------------- PartialQuotients

PartialQuotients::PartialQuotients(std::size_t dim, std::vector<std::vector<BigInt>> s)
    : m(dim), seqs(std::move(s)) {
  if (seqs.size() != m) throw InputError("expected " + std::to_string(m) + " sequences");
}

std::size_t PartialQuotients::length() const {
  std::size_t n = 0;
  for (const auto& s : seqs) n = std::max(n, s.size());
  return n;
}

std::size_t PartialQuotients::full_length() const {
  if (seqs.empty()) return 0;
  std::size_t n = seqs[0].size();
  for (const auto& s : seqs) n = std::min(n, s.size());
  return n;
}

PartialQuotients PartialQuotients::prefix(std::size_t n) const {
  PartialQuotients out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.seqs[j].assign(seqs[j].begin(), seqs[j].begin() + static_cast<std::ptrdiff_t>(std::min(n, seqs[j].size())));
  }
  return out;
}

// ---------------------------------------------------------------- admissibility

AdmissibilityReport check_admissible(const PartialQuotients& pq) {
  AdmissibilityReport report;
  const std::size_t m = pq.m;
  const std::size_t len = pq.length();
  auto name = [m](std::size_t j) {
    if (m == 2) return std::string(j == 0 ? "a" : "b");
    return "a^(" + std::to_string(j + 1) + ")";
  };
  for (std::size_t n = 1; n < len; ++n) {
    if (pq.has(0, n) && pq.at(0, n) < 1) {
      report.violations.push_back({n, name(0) + "_" + std::to_string(n) + " >= 1"});
    }
    for (std::size_t j = 1; j < m; ++j) {
      if (pq.has(j, n) && pq.at(j, n) < 0) {
        report.violations.push_back({n, name(j) + "_" + std::to_string(n) + " >= 0"});
      }
    }
    for (std::size_t i = 0; i + 2 <= m; ++i) {
      // Position t compares a^(t+1)_{n+t} with a^(m-i+t)_{n+t} for t <= i,
      // and a^(i+2)_{n+i+1} with the constant 1 at t = i+1.
      for (std::size_t t = 0; t <= i + 1; ++t) {
        std::size_t idx = n + t;
        if (!pq.has(t, idx)) break;
        const BigInt& lhs = pq.at(t, idx);
        BigInt rhs;
        if (t <= i) {
          std::size_t jr = m - i - 1 + t;
          if (!pq.has(jr, idx)) break;
          rhs = pq.at(jr, idx);
        } else {
          rhs = 1;
        }
        if (lhs > rhs) break;
        if (lhs < rhs) {
          report.violations.push_back(
              {idx, "lexicographic condition i=" + std::to_string(i) + " from n=" + std::to_string(n) +
                        ": " + name(t) + "_" + std::to_string(idx) + " = " + to_string(lhs) + " < " +
                        to_string(rhs)});
          break;
        }
      }
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const auto& x, const auto& y) { return x.index < y.index; });
  return report;
}

// ---------------------------------------------------------------- exact path

namespace {

BigInt floor_of_value(const BigRational& x) { return floor_of(x); }
BigInt floor_of_value(const FieldElement& x) { return floor_exact(x); }
bool integral(const BigRational& x) { return is_integral(x); }
bool integral(const FieldElement& x) { return x.is_rational() && is_integral(x.rational_value()); }
BigRational reciprocal(const BigRational& x) { return 1 / x; }
FieldElement reciprocal(const FieldElement& x) { return x.inverse(); }
BigRational minus(const BigRational& x, const BigInt& k) { return x - BigRational(k); }
FieldElement minus(const FieldElement& x, const BigInt& k) { return x - BigRational(k); }

template <class T>
void expand_exact(std::vector<T> x, ExpansionRecord& rec, bool keep_trace) {
  std::size_t dim = x.size();
  for (std::size_t n = 0; n < rec.steps_requested; ++n) {
    if (keep_trace) rec.trace.emplace_back(x.begin(), x.end());
    std::vector<BigInt> a(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      a[j] = floor_of_value(x[j]);
      rec.pq.seqs[j].push_back(a[j]);
    }
    // An integral last coordinate ends its sequence here; the shorter tuple is
    // processed at the same index, so it may interrupt again immediately.
    while (dim > 0 && integral(x[dim - 1])) {
      --dim;
      if (dim == 0) {
        rec.terminated_at = n;
      } else {
        rec.interruptions.push_back({n, dim});
      }
    }
    if (dim == 0) return;
    T inv = reciprocal(minus(x[dim - 1], a[dim - 1]));
    std::vector<T> next;
    next.reserve(dim);
    next.push_back(inv);
    for (std::size_t i = 1; i < dim; ++i) next.push_back(minus(x[i - 1], a[i - 1]) * inv);
    x = std::move(next);
  }
}

// ---------------------------------------------------------------- interval path

OracleHandle as_oracle(const RealValue& v) {
  switch (v.kind()) {
    case RealValue::Kind::oracle:
      return v.oracle();
    case RealValue::Kind::rational: {
      BigRational q = v.rational();
      return function_oracle([q](std::size_t) { return RationalInterval(q); }, to_string(q));
    }
    case RealValue::Kind::algebraic: {
      FieldElement e = v.algebraic();
      auto prev = std::make_shared<RationalInterval>(element_interval(e, BigRational(1)));
      return function_oracle(
          [e, prev](std::size_t k) {
            BigRational w(1);
            mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(4 * k));
            // Successive enclosures are intersected so the stream stays nested.
            *prev = prev->intersect(element_interval(e, w));
            return *prev;
          },
          v.describe());
    }
  }
  throw InputError("unknown real value kind");
}

using IntMatrix = std::vector<std::vector<BigInt>>;

void expand_oracle(const std::vector<RealValue>& inputs, ExpansionRecord& rec, bool keep_trace) {
  const std::size_t m = inputs.size();
  std::vector<OracleHandle> oracles;
  for (const auto& v : inputs) oracles.push_back(as_oracle(v));
  // q holds (M_0 ... M_{n-1})^{-1}; row i of q applied to (x, 1) is
  // proportional to alpha^(i+1)_n, row m to the common scale.
  IntMatrix q(m + 1, std::vector<BigInt>(m + 1, BigInt(0)));
  for (std::size_t i = 0; i <= m; ++i) q[i][i] = 1;
  const std::size_t budget = refinement_budget();

  for (std::size_t n = 0; n < rec.steps_requested; ++n) {
    std::vector<BigInt> a(m);
    std::vector<BigRational> widths(m);
    std::vector<RationalInterval> encl(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t spent = 0;; ++spent) {
        std::vector<RationalInterval> box;
        for (const auto& o : oracles) box.push_back(o->current());
        auto e = detail::ratio_enclosure(q[i], q[m], box);
        if (e) {
          BigInt k = floor_of(e->lo());
          if (e->hi() < BigRational(k + 1)) {
            a[i] = k;
            widths[i] = e->width();
            encl[i] = *e;
            break;
          }
        }
        if (spent >= budget) {
          throw NonTerminating("floor of coordinate " + std::to_string(i + 1) + " at index " +
                               std::to_string(n) + " not certified within " + std::to_string(budget) +
                               " refinement rounds");
        }
        for (auto& o : oracles) o->refine();
      }
    }
    for (std::size_t j = 0; j < m; ++j) rec.pq.seqs[j].push_back(a[j]);
    rec.widths.push_back(std::move(widths));
    if (keep_trace) rec.enclosures.push_back(std::move(encl));
    // Left-multiply by M_n^{-1}: row 0 <- row m, row j <- row j-1 - a_j * row m.
    IntMatrix next(m + 1);
    next[0] = q[m];
    for (std::size_t j = 1; j <= m; ++j) {
      next[j].resize(m + 1);
      for (std::size_t c = 0; c <= m; ++c) next[j][c] = q[j - 1][c] - a[j - 1] * q[m][c];
    }
    q = std::move(next);
  }
}

}  // namespace

// ---------------------------------------------------------------- public API

JacobiStep jacobi_step(const RealValue& alpha, const RealValue& beta, std::size_t index) {
  if (is_integer(beta)) throw Interruption(index);
  if (alpha.kind() == RealValue::Kind::oracle) throw UndecidableForOracle("jacobi_step needs exact inputs");
  std::vector<RealValue> in{alpha, beta};
  // Two indices: the first emits (a_n, b_n), the trace of the second holds
  // the next complete quotients.
  ExpansionRecord r = expand(in, 2, true);
  if (r.trace.size() < 2) throw Interruption(index);
  return {r.pq.seqs[0][0], r.pq.seqs[1][0], r.trace[1][0], r.trace[1][1]};
}

ExpansionRecord expand(const std::vector<RealValue>& inputs, std::size_t steps, bool keep_trace) {
  if (inputs.empty()) throw InputError("expand needs at least one input");
  ExpansionRecord rec;
  rec.pq = PartialQuotients(inputs.size());
  rec.steps_requested = steps;

  bool any_oracle = false;
  FieldHandle field;
  bool mixed_fields = false;
  for (const auto& v : inputs) {
    if (v.kind() == RealValue::Kind::oracle) any_oracle = true;
    if (v.kind() == RealValue::Kind::algebraic) {
      const FieldHandle& f = v.algebraic().field();
      if (!field) {
        field = f;
      } else if (f != field && !field->same_generator(*f)) {
        mixed_fields = true;
      }
    }
  }

  if (any_oracle || mixed_fields) {
    rec.oracle_path = true;
    expand_oracle(inputs, rec, keep_trace);
    return rec;
  }
  if (!field) {
    std::vector<BigRational> x;
    for (const auto& v : inputs) x.push_back(v.rational());
    expand_exact(std::move(x), rec, keep_trace);
    return rec;
  }
  std::vector<FieldElement> x;
  for (const auto& v : inputs) {
    if (v.kind() == RealValue::Kind::rational) {
      x.push_back(FieldElement::from_rational(field, v.rational()));
    } else {
      x.emplace_back(field, v.algebraic().coords());
    }
  }
  expand_exact(std::move(x), rec, keep_trace);
  return rec;
}

std::string to_jsonl(const ExpansionRecord& rec) {
  std::string out;
  const auto& pq = rec.pq;
  std::size_t ev = 0;
  for (std::size_t n = 0; n < pq.length(); ++n) {
    nlohmann::ordered_json line;
    line["n"] = n;
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t j = 0; j < pq.m; ++j) {
      if (pq.has(j, n)) a.push_back(to_string(pq.at(j, n)));
    }
    line["a"] = a;
    line["event"] = "step";
    if (rec.oracle_path && n < rec.widths.size()) {
      nlohmann::json w = nlohmann::json::array();
      for (const auto& x : rec.widths[n]) w.push_back(to_string(x));
      line["width"] = w;
    }
    out += line.dump() + "\n";
    while (ev < rec.interruptions.size() && rec.interruptions[ev].index == n) {
      const auto& e = rec.interruptions[ev];
      nlohmann::ordered_json il;
      il["n"] = n;
      // The value that ended: the last entry of sequence dim_after + 1.
      il["a"] = nlohmann::json::array({to_string(pq.at(e.dim_after, n))});
      il["event"] = "interruption";
      il["dim_after"] = e.dim_after;
      out += il.dump() + "\n";
      ++ev;
    }
  }
  return out;
}

}  // namespace mcf
