#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace mcf {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parses a decimal integer ("-12", "+7", "0"). Throws InputError on bad text.
BigInt parse_int(std::string_view text);

/// Parses "p/q", "p" or a finite decimal literal ("1.25") into a canonical
/// rational. The denominator must be nonzero.
BigRational parse_rational(std::string_view text);

inline std::string to_string(const BigInt& v) { return v.get_str(10); }
std::string to_string(const BigRational& v);

/// Number of bits of |v|; zero for v == 0.
std::size_t bit_length(const BigInt& v);

BigInt ipow(const BigInt& base, unsigned long exp);
BigRational rpow(const BigRational& base, long exp);

BigInt floor_of(const BigRational& v);
BigInt ceil_of(const BigRational& v);

inline bool is_integral(const BigRational& v) { return v.get_den() == 1; }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

/// Smallest integer r with r^q >= v^p for v >= 0 (ceil of v^(p/q)).
BigInt ceil_rational_power(const BigInt& v, unsigned long p, unsigned long q);

/// Decimal rendering of a rational to the given number of fractional digits,
/// truncated toward negative infinity.
std::string to_decimal(const BigRational& v, unsigned digits);

}  // namespace mcf
