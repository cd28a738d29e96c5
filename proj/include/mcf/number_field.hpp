#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/interval.hpp"
#include "mcf/poly.hpp"

namespace mcf {

/// Q(theta) where theta is the unique real root of an integer polynomial inside
/// an isolating interval. The polynomial must be squarefree; irreducibility is
/// not checked, so Q[x]/(f) may be a product of fields. Element arithmetic is
/// done modulo f and every real-valued question is answered for theta itself.
///
/// The isolating interval is a cache: it only ever shrinks, under a mutex, so
/// handles can be shared between threads.
class NumberField {
 public:
  /// Validates the polynomial (degree 2..8, squarefree, exactly one root
  /// strictly inside, nonzero and opposite signs at the endpoints).
  static std::shared_ptr<const NumberField> create(IntPoly min_poly, RationalInterval root_interval);

  const IntPoly& min_poly() const { return poly_; }
  const QPoly& min_poly_q() const { return qpoly_; }
  int degree() const { return poly_.degree(); }

  /// Snapshot of the current isolating interval.
  RationalInterval root_interval() const;
  /// The interval given at construction.
  const RationalInterval& initial_interval() const { return initial_; }
  /// Bisects until the isolating interval is no wider than `width`.
  RationalInterval refine_to(const BigRational& width) const;

  /// True when both fields describe the same real generator.
  bool same_generator(const NumberField& other) const;

  NumberField(IntPoly min_poly, RationalInterval root_interval);

 private:
  IntPoly poly_;
  QPoly qpoly_;
  RationalInterval initial_;
  mutable std::mutex mu_;
  mutable RationalInterval interval_;
};

using FieldHandle = std::shared_ptr<const NumberField>;

/// Element of a NumberField in power-basis coordinates 1, theta, ..., theta^(d-1).
class FieldElement {
 public:
  FieldElement(FieldHandle field, std::vector<BigRational> coords);
  static FieldElement from_rational(FieldHandle field, const BigRational& value);
  static FieldElement generator(FieldHandle field);

  const FieldHandle& field() const { return field_; }
  const std::vector<BigRational>& coords() const { return coords_; }

  bool is_rational() const;
  bool is_zero() const;
  /// Requires is_rational().
  const BigRational& rational_value() const { return coords_[0]; }
  QPoly as_poly() const { return QPoly(coords_); }

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend FieldElement operator+(const FieldElement& a, const BigRational& b);
  friend FieldElement operator-(const FieldElement& a, const BigRational& b);
  friend FieldElement operator*(const BigRational& s, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldHandle field_;
  std::vector<BigRational> coords_;
};

enum class FieldOp { add, sub, mul, inv };

/// Dispatches one field operation; `b` is ignored for inv.
FieldElement field_arith(FieldOp op, const FieldElement& a, const FieldElement* b = nullptr);

/// Enclosure of `p(theta)` using the field's current isolating interval.
RationalInterval evaluate_on_root(const QPoly& p, const NumberField& field);

/// Interval of width <= `width` containing the element.
RationalInterval element_interval(const FieldElement& a, const BigRational& width);

/// Exact sign of the real number the element denotes.
int exact_sign(const FieldElement& a);

/// Exact floor of the real number the element denotes.
BigInt floor_exact(const FieldElement& a);

/// Evaluates an integer polynomial at a field element, exactly.
FieldElement evaluate(const IntPoly& p, const FieldElement& x);

}  // namespace mcf
