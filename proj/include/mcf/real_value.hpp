#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "mcf/bigint.hpp"
#include "mcf/interval.hpp"
#include "mcf/number_field.hpp"

namespace mcf {

/// Maximum number of refinement pulls spent on a single decision. Defaults to
/// 64; MCF_PRECISION_BUDGET overrides it at first use, set_refinement_budget
/// afterwards.
std::size_t refinement_budget();
void set_refinement_budget(std::size_t budget);

/// Producer of nested rational intervals. pull(k) returns the k-th enclosure
/// and is called with k = 0, 1, 2, ... in order. A source with nothing left
/// throws NonTerminating.
class IntervalSource {
 public:
  virtual ~IntervalSource() = default;
  virtual RationalInterval pull(std::size_t k) = 0;
  virtual std::string describe() const = 0;
};

/// Single-consumer stream over an IntervalSource. Enforces nesting on every
/// pull: a source that widens or escapes its previous enclosure is a bug.
class Oracle {
 public:
  explicit Oracle(std::unique_ptr<IntervalSource> source);

  const RationalInterval& current() const { return current_; }
  /// Pulls the next enclosure. Throws NonTerminating when the source is
  /// exhausted, InputError when nesting fails.
  const RationalInterval& refine();
  /// Refines until width <= `width` or the budget runs out (NonTerminating).
  const RationalInterval& refine_to(const BigRational& width, std::size_t budget);
  std::size_t pulls() const { return pulls_; }
  std::string describe() const { return source_->describe(); }

 private:
  std::unique_ptr<IntervalSource> source_;
  RationalInterval current_;
  std::size_t pulls_ = 0;
};

using OracleHandle = std::shared_ptr<Oracle>;

/// Truncations of a decimal literal: pull k is the interval between the
/// truncation to k fractional digits and the next k-digit decimal outward.
/// Exhausted once k exceeds the number of digits supplied.
OracleHandle decimal_oracle(const std::string& literal);

/// Oracle from a callback returning the k-th enclosure.
OracleHandle function_oracle(std::function<RationalInterval(std::size_t)> f, std::string name);

class RealValue {
 public:
  enum class Kind { rational, algebraic, oracle };

  RealValue(BigRational v) : v_(canonical(std::move(v))) {}  // NOLINT(google-explicit-constructor)
  RealValue(FieldElement v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  RealValue(OracleHandle v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  const BigRational& rational() const { return std::get<BigRational>(v_); }
  const FieldElement& algebraic() const { return std::get<FieldElement>(v_); }
  const OracleHandle& oracle() const { return std::get<OracleHandle>(v_); }

  /// Enclosure of width <= `width` (oracles: within the budget).
  RationalInterval enclosure(const BigRational& width) const;
  std::string describe() const;

 private:
  static BigRational canonical(BigRational v) {
    v.canonicalize();
    return v;
  }
  std::variant<BigRational, FieldElement, OracleHandle> v_;
};

/// Floor plus the width of the enclosure that certified it (0 when exact).
struct CertifiedFloor {
  BigInt value;
  BigRational width;
};

/// Exact floor. Oracles refine until the enclosure lies in [k, k+1); an
/// integer limit never certifies and ends in NonTerminating.
BigInt floor_exact(const RealValue& x);
CertifiedFloor floor_certified(const RealValue& x);
CertifiedFloor floor_certified(Oracle& oracle, std::size_t budget);

/// Exact integrality test; UndecidableForOracle on oracles.
bool is_integer(const RealValue& x);

/// Sign of x - q. Exact for rational and algebraic values; oracles refine
/// until the enclosure excludes q (NonTerminating on ties).
int compare(const RealValue& x, const BigRational& q);

/// x - y as an exact value when both are rational or algebraic over one field.
std::optional<RealValue> exact_difference(const RealValue& x, const RealValue& y);

/// Enclosure of x - y no wider than `width` (oracles: within the budget).
RationalInterval difference_enclosure(const RealValue& x, const RealValue& y, const BigRational& width);

/// Sign of |x - y| - b for b >= 0. Exact where exact_difference applies;
/// otherwise enclosures are refined, and a tie ends in NonTerminating.
int compare_abs_difference(const RealValue& x, const RealValue& y, const BigRational& b);

}  // namespace mcf
