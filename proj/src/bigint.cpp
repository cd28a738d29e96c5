#include "mcf/bigint.hpp"

#include <cctype>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_int(std::string_view text) {
  std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw InputError("not an integer: '" + std::string(text) + "'");
  std::string normalized(s.front() == '+' ? s.substr(1) : s);
  return BigInt(normalized, 10);
}

BigRational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    if (int_part.empty()) int_part = "0";
    if (!all_digits(int_part) || (!frac.empty() && !all_digits(frac))) {
      throw InputError("not a decimal literal: '" + std::string(text) + "'");
    }
    BigInt num(std::string(int_part) + std::string(frac), 10);
    BigInt den = ipow(BigInt(10), frac.size());
    if (negative) num = -num;
    return make_rational(num, den);
  }
  return BigRational(parse_int(s));
}

std::string to_string(const BigRational& v) {
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigRational rpow(const BigRational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw DivisionByZero("zero to a negative power");
    BigRational inv = 1 / base;
    return rpow(inv, -exp);
  }
  BigRational r(ipow(base.get_num(), static_cast<unsigned long>(exp)),
                ipow(base.get_den(), static_cast<unsigned long>(exp)));
  r.canonicalize();
  return r;
}

BigInt floor_of(const BigRational& v) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const BigRational& v) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

BigInt ceil_rational_power(const BigInt& v, unsigned long p, unsigned long q) {
  if (v < 0) throw InputError("ceil_rational_power: negative base");
  if (q == 0) throw InputError("ceil_rational_power: zero exponent denominator");
  BigInt target = ipow(v, p);
  BigInt r;
  int exact = mpz_root(r.get_mpz_t(), target.get_mpz_t(), q);
  if (!exact) r += 1;
  return r;
}

std::string to_decimal(const BigRational& v, unsigned digits) {
  BigInt scaled = floor_of(v * BigRational(ipow(BigInt(10), digits)));
  bool negative = scaled < 0;
  BigInt mag = abs(scaled);
  std::string s = mag.get_str(10);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace mcf
