#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/interval.hpp"
#include "mcf/real_value.hpp"

namespace mcf {

/// m integer sequences a^(1), ..., a^(m); seqs[j] holds a^(j+1). Sequences may
/// have different lengths once interruptions have occurred.
struct PartialQuotients {
  std::size_t m = 0;
  std::vector<std::vector<BigInt>> seqs;

  PartialQuotients() = default;
  explicit PartialQuotients(std::size_t dim) : m(dim), seqs(dim) {}
  PartialQuotients(std::size_t dim, std::vector<std::vector<BigInt>> s);

  /// Length of the longest sequence.
  std::size_t length() const;
  /// Number of leading indices at which every sequence has an entry.
  std::size_t full_length() const;
  const BigInt& at(std::size_t j, std::size_t n) const { return seqs[j][n]; }
  bool has(std::size_t j, std::size_t n) const { return n < seqs[j].size(); }
  /// Copy truncated to the first `n` indices of every sequence.
  PartialQuotients prefix(std::size_t n) const;

  friend bool operator==(const PartialQuotients& a, const PartialQuotients& b) {
    return a.m == b.m && a.seqs == b.seqs;
  }
};

struct AdmissibilityViolation {
  std::size_t index;
  std::string condition;
};

struct AdmissibilityReport {
  std::vector<AdmissibilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every admissibility condition for n >= 1:
///   a^(1)_n >= 1 and a^(j)_n >= 0;
///   for 0 <= i <= m-2 the lexicographic comparison
///     (a^(1)_n, a^(2)_{n+1}, ..., a^(i+2)_{n+i+1})
///       >= (a^(m-i)_n, a^(m-i+1)_{n+1}, ..., a^(m)_{n+i}, 1).
/// A comparison that runs into a missing entry before it is decided is
/// skipped. Violations are reported at the index of the deciding entry. For
/// m = 2 this is a_n >= 1, b_n >= 0, a_n >= b_n, and b_{n+1} >= 1 if a_n = b_n.
AdmissibilityReport check_admissible(const PartialQuotients& pq);

/// One step of Jacobi's algorithm on exact values.
struct JacobiStep {
  BigInt a, b;
  RealValue alpha_next, beta_next;
};

/// Throws Interruption(index) when beta is an integer. Oracle inputs are
/// rejected with UndecidableForOracle.
JacobiStep jacobi_step(const RealValue& alpha, const RealValue& beta, std::size_t index = 0);

struct InterruptionEvent {
  std::size_t index;
  /// Dimension the algorithm continues in; always >= 1.
  std::size_t dim_after;
};

struct ExpansionRecord {
  PartialQuotients pq;
  std::vector<InterruptionEvent> interruptions;
  /// Index at which the last remaining coordinate became an integer.
  std::optional<std::size_t> terminated_at;
  /// Complete quotients (alpha^(1)_n, ..., alpha^(dim)_n) per processed index;
  /// filled for exact runs when a trace is requested.
  std::vector<std::vector<RealValue>> trace;
  /// True when the run went through the interval path.
  bool oracle_path = false;
  /// Oracle path: width of the enclosure that certified each floor, and the
  /// enclosures themselves when a trace is requested.
  std::vector<std::vector<BigRational>> widths;
  std::vector<std::vector<RationalInterval>> enclosures;
  std::size_t steps_requested = 0;
};

/// Runs the Jacobi-Perron algorithm for `steps` indices. Exact inputs that are
/// all rational, or all algebraic over one field, run exactly and detect
/// interruptions. Anything else (an oracle, or algebraic numbers from
/// different fields) runs on enclosures, which can never certify an integer
/// complete quotient and therefore reports no interruptions.
ExpansionRecord expand(const std::vector<RealValue>& inputs, std::size_t steps, bool keep_trace);

/// JSON-lines rendering, one object per index plus one per interruption.
std::string to_jsonl(const ExpansionRecord& record);

}  // namespace mcf
