#include "mcf/certified_log.hpp"

#include <mpfr.h>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

class Mpfr {
 public:
  explicit Mpfr(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Exact value of a finite mpfr number.
BigRational to_rational(mpfr_srcptr x) {
  BigInt mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  BigRational r(mant);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

BigRational log_bound(const BigRational& x, unsigned bits, mpfr_rnd_t rnd) {
  Mpfr in(bits + 32);
  Mpfr out(bits);
  mpfr_set_q(in.get(), x.get_mpq_t(), rnd);
  mpfr_log(out.get(), in.get(), rnd);
  return to_rational(out.get());
}

}  // namespace

RationalInterval log_interval(const RationalInterval& x, unsigned precision_bits) {
  if (x.lo() <= 0) throw InputError("log of a non-positive interval " + x.to_string());
  // log is increasing: the lower end rounds down in both the conversion and
  // the log, the upper end rounds up.
  return RationalInterval(log_bound(x.lo(), precision_bits, MPFR_RNDD),
                          log_bound(x.hi(), precision_bits, MPFR_RNDU));
}

RationalInterval log_interval(const BigInt& x, unsigned precision_bits) {
  if (x <= 0) throw InputError("log of a non-positive integer");
  return log_interval(RationalInterval(BigRational(x)), precision_bits);
}

}  // namespace mcf
