#pragma once

#include "mcf/bigint.hpp"
#include "mcf/interval.hpp"

namespace mcf {

/// Rational enclosure of log(x) for every x in `x`; requires x.lo() > 0.
/// Endpoints are computed with outward rounding at `precision_bits`.
RationalInterval log_interval(const RationalInterval& x, unsigned precision_bits = 160);

/// Same for a positive integer.
RationalInterval log_interval(const BigInt& x, unsigned precision_bits = 160);

}  // namespace mcf
