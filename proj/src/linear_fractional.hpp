#pragma once

#include <optional>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/interval.hpp"

namespace mcf::detail {

/// Enclosure of (num . v) / (den . v) for v = (x_1, ..., x_m, 1) ranging over
/// the box, or nullopt when the denominator may vanish on it. The map is
/// linear-fractional, so for small m its extremes are taken at the corners.
std::optional<RationalInterval> ratio_enclosure(const std::vector<BigInt>& num,
                                                const std::vector<BigInt>& den,
                                                const std::vector<RationalInterval>& box);

}  // namespace mcf::detail
