#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/expansion.hpp"
#include "mcf/interval.hpp"
#include "mcf/number_field.hpp"
#include "mcf/real_value.hpp"

namespace mcf {

/// Real root of x^3 - x^2 - 1, isolated in (1, 2).
FieldHandle psi_field();
/// Positive real root of x^3 - M x^2 - M x - 1, isolated in (M, M+1); M >= 1.
FieldHandle eta_field(const BigInt& M);
/// log(d+1) + log(1 + 1/d) + log log(m+1), enclosed with certified rounding.
RationalInterval growth_constant_k(unsigned long d, unsigned long m);

// ---------------------------------------------------------------- witnesses

struct WitnessReport {
  /// per_coordinate[i] lists the n with |x_i - A^(i)_n/C_n| < |At^(i)_{n+1}|/(C_{n+1} C_n).
  std::vector<std::vector<std::size_t>> per_coordinate;
  /// Indices where every coordinate is a witness.
  std::vector<std::size_t> simultaneous;
  std::size_t checked = 0;
};

/// Scans n = 0..N. `pq` must expand `x` through index N+1.
WitnessReport approx_witnesses(const std::vector<RealValue>& x, const PartialQuotients& pq, std::size_t N);

/// True when min and max of A^(i)_k/C_k over k = n..n+m bracket x_i for all i.
/// Returns the first n <= N where bracketing fails, if any.
std::optional<std::size_t> window_containment(const std::vector<RealValue>& x, const PartialQuotients& pq,
                                              std::size_t N);

// ---------------------------------------------------------------- bounds

struct BoundViolation {
  std::size_t index;
  std::string check;
  std::string detail;
};

struct BoxHypothesis {
  BigInt N;
  BigInt M;
};

struct BoundReport {
  std::size_t depth = 0;
  std::optional<BoundViolation> violation;
  bool numerators_checked = false;  // A_n, B_n <= C_n (needs a_0 = b_0 = 0)
  bool box_checked = false;         // N C_n <= A_n <= (N+1) C_n and the B analogue
  std::size_t tilde_checked = 0;    // indices where a_{n+1} < C_n held and |At_{n+1}|, |Bt_{n+1}| < 3 C_n^2 was tested
  /// max over n <= depth and i of A^(i)_n / C_n.
  BigRational empirical_k;
  bool ok() const { return !violation.has_value(); }
};

/// Runs the numerator, box and tilde bounds for n <= N, after confirming the
/// quotients are admissible. The first failure is reported, not thrown. A box
/// whose (N, M) disagrees with (a_0, b_0), or with the supplied inputs, raises
/// PreconditionViolated. The numerator and box checks need m = 2.
BoundReport bound_checks(const PartialQuotients& pq, std::size_t N, const std::optional<BoxHypothesis>& box = {},
                         const std::vector<RealValue>* inputs = nullptr);

// ---------------------------------------------------------------- proximity

struct ProximityReport {
  std::size_t n = 0;
  /// Enclosures of |alpha - alpha'| and |beta - beta'|.
  RationalInterval gap_alpha, gap_beta;
  /// C_{n-2} (zero when n < 2: that bound is infinite) and C_n.
  BigInt c_n_minus_2, c_n;
  bool far_bound_alpha = false, far_bound_beta = false;    // gap < 1/C_{n-2}
  bool near_bound_alpha = false, near_bound_beta = false;  // gap < 2/C_n
  /// "far" when 1/C_{n-2} < 2/C_n, "near" when the reverse, "equal" otherwise.
  std::string tighter;
};

/// Both pairs must expand identically through index n (PrefixMismatch
/// otherwise, at the first differing index).
ProximityReport proximity_check(const std::vector<RealValue>& x, const std::vector<RealValue>& xp, std::size_t n);

// ---------------------------------------------------------------- growth

struct GrowthOptions {
  /// Bound on a^(1)_n for 1 <= n <= N, enabling the eta check.
  std::optional<BigInt> max_quotient;
  /// Exponent d, enabling the doubly exponential check.
  std::optional<unsigned long> d;
};

struct GrowthFailure {
  std::size_t index;
  std::string detail;
};

struct GrowthReport {
  std::size_t depth = 0;
  bool psi_checked = false;
  std::optional<GrowthFailure> psi_violation;     // first n with C_n <= psi^(n-2)
  bool eta_checked = false;
  std::optional<GrowthFailure> eta_violation;     // first n with C_n > eta^n
  bool loglog_checked = false;
  RationalInterval k;                              // K(d, m) when loglog_checked
  std::optional<GrowthFailure> loglog_violation;  // first n with log log C_{n+1} >= K n
  bool ok() const { return !psi_violation && !eta_violation && !loglog_violation; }
};

/// psi: C_n > psi^(n-2) for 0 <= n <= N (m = 2 only).
/// eta: C_n <= eta(M)^n for 0 <= n <= N; needs a_n <= M for 1 <= n <= N.
/// loglog: log log C_{n+1} < K(d, m) n for 1 <= n < N; needs
///   a^(1)_{n+1} < C_n^d for 1 <= n < N and C_1 < m + 1.
/// A failed hypothesis throws HypothesisViolated at the offending index;
/// failed conclusions are reported.
GrowthReport growth_check(const PartialQuotients& pq, std::size_t N, const GrowthOptions& opt);

/// Certified test of log log c < bound for an integer c >= 1 (c = 1 counts
/// as log log c = -infinity). Returns false only when log log c >= bound is
/// certified.
bool loglog_below(const BigInt& c, const RationalInterval& bound);

}  // namespace mcf
