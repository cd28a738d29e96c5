#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/expansion.hpp"
#include "mcf/interval.hpp"
#include "mcf/real_value.hpp"

namespace mcf {

// ---------------------------------------------------------------- free entries

/// Supplies one integer sequence by index. Text forms:
///   const:v          every entry is v
///   cycle:v1,v2,...  entries repeat with that period
///   list:v1,v2,...   exactly those entries; reading past the end is an error
///   random:max       uniform in [0, max], from a seeded generator
class EntryRule {
 public:
  static EntryRule parse(const std::string& text, std::uint64_t seed = 0);
  static EntryRule constant(BigInt v);
  static EntryRule list(std::vector<BigInt> values);

  BigInt at(std::size_t n) const;
  std::string describe() const { return text_; }

 private:
  enum class Kind { constant, cycle, list, random };
  Kind kind_ = Kind::constant;
  std::vector<BigInt> values_;
  std::uint64_t seed_ = 0;
  std::string text_;
};

// ---------------------------------------------------------------- reports

struct HypothesisResult {
  std::string name;
  bool holds = true;
  std::optional<std::size_t> first_violation;
  std::size_t checked = 0;
  std::string detail;
};

struct WitnessEntry {
  std::size_t index;
  std::size_t coordinate;
  std::string value;
};

/// Evidence that a criterion's hypotheses hold to a finite depth. It never
/// claims anything about limits.
struct CriterionReport {
  std::string criterion;
  std::size_t depth = 0;
  std::vector<HypothesisResult> hypotheses;
  std::vector<WitnessEntry> witnesses;
  std::vector<std::pair<std::string, std::string>> notes;

  bool holds() const;
  /// Smallest first-violation index over all hypotheses.
  std::optional<std::size_t> violated_at() const;
  /// "hypotheses-hold-to-depth" or "violated-at".
  std::string verdict() const;
};

// ---------------------------------------------------------------- Liouville

struct LiouvilleSpec {
  std::size_t m = 2;
  BigRational delta{1};
  BigInt a0{0};
  /// Rules for a^(2), ..., a^(m) at every index.
  std::vector<EntryRule> free;
  std::size_t depth = 0;
};

/// Builds indices 0..depth. Each a^(1)_n for n >= 1 is
///   max(max_i |At^(i)_n| * ceil(C_{n-1}^delta) + 1, smallest admissible value);
/// At^(i)_n does not involve a^(1)_n, so it is computed with that entry set
/// to zero. Throws AdmissibilityConflict when the free entries cannot be
/// completed to admissible sequences.
PartialQuotients construct_liouville(const LiouvilleSpec& spec);

/// a^(1)_n > max_i |At^(i)_n| C_{n-1}^delta for 1 <= n <= N, decided on
/// integers after raising both sides to the denominator of delta.
CriterionReport verify_liouville(const PartialQuotients& pq, const BigRational& delta, std::size_t N);

struct RothWitness {
  std::size_t index;
  std::size_t coordinate;
};

/// All n <= N and coordinates i with |x_i - A^(i)_n / C_n| < C_n^-(2+epsilon).
/// epsilon must be positive.
std::vector<RothWitness> roth_scan(const std::vector<RealValue>& x, const PartialQuotients& pq,
                                   const BigRational& epsilon, std::size_t N);

/// Certified |At^(i)_{n+1}| / (C_{n+1} C_n) < C_n^-(2+delta) at index n.
bool tilde_below_roth_bound(const PartialQuotients& pq, std::size_t n, std::size_t coordinate,
                            const BigRational& delta);

// ---------------------------------------------------------------- quasi-periodic

struct ScheduleEntry {
  BigInt n, r, lambda;
};

struct QuasiPeriodicSpec {
  std::size_t m = 2;
  std::vector<ScheduleEntry> schedule;
  /// One rule per sequence for positions not fixed by a repetition.
  std::vector<EntryRule> base;
};

/// Validates the schedule (positive entries, n strictly increasing, windows
/// [n_k, n_k + lambda_k r_k) disjoint; ScheduleOverlap otherwise), fills
/// indices 0..depth from the base and copies each block lambda_k - 1 times.
/// Throws AdmissibilityError at the first violated index.
PartialQuotients build_quasiperiodic(const QuasiPeriodicSpec& spec, std::size_t depth);

/// a^(j)_{t + r_k} = a^(j)_t for n_k <= t <= n_k + (lambda_k - 1) r_k - 1,
/// restricted to t + r_k <= depth. Returns the first failing t.
std::optional<std::size_t> repetition_violation(const PartialQuotients& pq, const std::vector<ScheduleEntry>& schedule);

/// a_{i+1} < C_i^d for 1 <= i < depth, r_k < c n_k for every entry, and the
/// sequence log(lambda_k) / n_k with its trend. m = 2.
CriterionReport main1_check(const QuasiPeriodicSpec& spec, unsigned long d, const BigRational& c, std::size_t depth);

enum class ConstantVariant { statement, lemma38, proof18 };
ConstantVariant parse_variant(const std::string& name);
std::string variant_name(ConstantVariant v);

/// factor * log(eta(M)) / log(psi) - 1 as a certified interval; factor is 2
/// except for proof18 (18), psi is the real root of x^3 - x^2 - x - 1 for the
/// statement variant and of x^3 - x^2 - 1 otherwise. When eta and psi are the
/// same number the ratio is exactly 1.
RationalInterval main2_constant(const BigInt& M, ConstantVariant variant);

/// a_k, b_k <= M for k <= depth, r_k <= N_bound, and max_k lambda_k / n_k
/// compared with B. m = 2.
CriterionReport main2_check(const QuasiPeriodicSpec& spec, const BigInt& M, const BigInt& N_bound,
                            ConstantVariant variant, std::size_t depth);

}  // namespace mcf
