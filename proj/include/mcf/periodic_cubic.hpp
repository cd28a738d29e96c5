#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/expansion.hpp"
#include "mcf/interval.hpp"
#include "mcf/number_field.hpp"
#include "mcf/poly.hpp"

namespace mcf {

/// (a_0..a_{k-1}, period a_k..a_{k+h-1}) and the same for b.
struct PeriodicSpec {
  std::vector<BigInt> pre_a, pre_b, per_a, per_b;

  std::size_t k() const { return pre_a.size(); }
  std::size_t h() const { return per_a.size(); }
  /// Entry n of the unrolled sequences (j = 0 for a, 1 for b).
  const BigInt& at(std::size_t j, std::size_t n) const;
  /// Indices 0..length-1 of the unrolled sequences.
  PartialQuotients unroll(std::size_t length) const;
  /// Shape and admissibility of the infinite sequences. Throws InputError on
  /// mismatched block lengths or an empty period, AdmissibilityError at the
  /// first violated index otherwise.
  void validate() const;
};

using XMatrix = std::array<std::array<BigInt, 3>, 3>;

/// X = P_{k+h-1} P_{k-1}^{-1}, where P_n has columns (A,B,C) at n, n-1, n-2;
/// the inverse is written with the auxiliary sequences at k-2 and k-1.
XMatrix x_matrix(const PeriodicSpec& spec);

enum class CubicTarget { alpha, beta };

/// A x^3 + B x^2 + C x + D.
struct CubicQuartet {
  BigInt A, B, C, D;
  IntPoly poly() const { return IntPoly({D, C, B, A}); }
  bool operator==(const CubicQuartet& o) const { return A == o.A && B == o.B && C == o.C && D == o.D; }
};

/// Closed-form coefficients of the cubic satisfied by alpha_0 or beta_0. The
/// result is cross-checked against the polynomial obtained by eliminating the
/// other coordinate; the quartic terms must cancel there. Throws
/// DegenerateCubic when A = 0.
CubicQuartet cubic_coeffs(const XMatrix& x, CubicTarget target);

/// The eliminated polynomial itself; its quartic terms cancel.
QPoly elimination_poly(const XMatrix& x, CubicTarget target);

struct CubicCertificate {
  CubicCertificate(FieldElement a, FieldElement b) : field(a.field()), alpha(std::move(a)), beta(std::move(b)) {}

  CubicQuartet raw_alpha, raw_beta;  // as produced by cubic_coeffs
  IntPoly poly_alpha, poly_beta;     // primitive parts
  BigInt height_alpha, height_beta;
  BigInt c_last;                     // C_{h+k-1}
  std::optional<BigInt> bound;       // absent when a_0 or b_0 is negative
  bool bound_holds = false;
  XMatrix x;
  FieldHandle field;                 // Q(alpha_0)
  FieldElement alpha, beta;
  RationalInterval alpha_interval, beta_interval;
  RationalInterval residual_alpha, residual_beta;  // enclosures of poly(root)
  bool residual_ok = false;
  std::size_t matched_quotients = 0;
};

/// X-matrix, both cubics, heights and the height bound, then the real root of
/// the alpha cubic whose re-expansion reproduces at least max(2(k+h), 20)
/// quotients. Throws DegenerateCubic (zero leading coefficient or a rational
/// root), RootSelectionAmbiguous, or AdmissibilityError.
CubicCertificate solve_periodic(const PeriodicSpec& spec);

/// Evaluates the pair with pre-period `spec` in the field of the purely
/// periodic pair sharing its period, using the pre-period convergents, and
/// checks it against the spec's own certificate. Throws PeriodMismatch when
/// the periods differ.
bool same_field_check(const PeriodicSpec& s1, const PeriodicSpec& s2);

/// (alpha_0, beta_0) for the pre-period of `spec`, given (alpha_k, beta_k).
std::array<FieldElement, 2> apply_preperiod(const PeriodicSpec& spec, const FieldElement& alpha_k,
                                            const FieldElement& beta_k);

}  // namespace mcf
