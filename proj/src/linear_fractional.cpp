#include "linear_fractional.hpp"

namespace mcf::detail {

std::optional<RationalInterval> ratio_enclosure(const std::vector<BigInt>& num,
                                                const std::vector<BigInt>& den,
                                                const std::vector<RationalInterval>& box) {
  const std::size_t m = box.size();
  if (m <= 10) {
    std::optional<BigRational> lo, hi;
    int den_sign = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      BigRational nv(num[m]);
      BigRational dv(den[m]);
      for (std::size_t j = 0; j < m; ++j) {
        const BigRational& x = (mask >> j) & 1 ? box[j].hi() : box[j].lo();
        nv += num[j] * x;
        dv += den[j] * x;
      }
      int s = sgn(dv);
      if (s == 0 || (den_sign != 0 && s != den_sign)) return std::nullopt;
      den_sign = s;
      BigRational r = nv / dv;
      if (!lo || r < *lo) lo = r;
      if (!hi || r > *hi) hi = r;
    }
    return RationalInterval(*lo, *hi);
  }
  RationalInterval nv{BigRational(num[m])};
  RationalInterval dv{BigRational(den[m])};
  for (std::size_t j = 0; j < m; ++j) {
    nv = nv + BigRational(num[j]) * box[j];
    dv = dv + BigRational(den[j]) * box[j];
  }
  if (dv.contains_zero()) return std::nullopt;
  return nv / dv;
}

}  // namespace mcf::detail
