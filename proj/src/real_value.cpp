#include "mcf/real_value.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <utility>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

std::atomic<std::size_t> g_budget{0};
std::once_flag g_budget_once;

void init_budget() {
  std::size_t b = 64;
  if (const char* env = std::getenv("MCF_PRECISION_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0) {
      throw InputError("MCF_PRECISION_BUDGET must be a positive integer");
    }
    b = static_cast<std::size_t>(v);
  }
  std::size_t expected = 0;
  g_budget.compare_exchange_strong(expected, b);
}

class DecimalSource final : public IntervalSource {
 public:
  explicit DecimalSource(const std::string& literal) : literal_(literal) {
    std::string_view s(literal);
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative_ = s[0] == '-';
      s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw InputError("empty decimal literal");
    for (char c : ip) {
      if (c < '0' || c > '9') throw InputError("bad decimal literal: " + literal);
    }
    for (char c : fp) {
      if (c < '0' || c > '9') throw InputError("bad decimal literal: " + literal);
    }
    int_part_ = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    digits_ = std::string(fp);
  }

  RationalInterval pull(std::size_t k) override {
    if (k > digits_.size()) {
      throw NonTerminating("decimal oracle exhausted after " + std::to_string(digits_.size()) +
                           " digits");
    }
    BigInt scale = ipow(BigInt(10), k);
    BigInt t = int_part_ * scale + (k == 0 ? BigInt(0) : BigInt(digits_.substr(0, k)));
    BigRational lo = make_rational(t, scale);
    BigRational hi = make_rational(t + 1, scale);
    if (negative_) return RationalInterval(-hi, -lo);
    return RationalInterval(lo, hi);
  }

  std::string describe() const override { return "decimal:" + literal_; }

 private:
  std::string literal_;
  bool negative_ = false;
  BigInt int_part_;
  std::string digits_;
};

class FunctionSource final : public IntervalSource {
 public:
  FunctionSource(std::function<RationalInterval(std::size_t)> f, std::string name)
      : f_(std::move(f)), name_(std::move(name)) {}
  RationalInterval pull(std::size_t k) override { return f_(k); }
  std::string describe() const override { return name_; }

 private:
  std::function<RationalInterval(std::size_t)> f_;
  std::string name_;
};

}  // namespace

std::size_t refinement_budget() {
  std::call_once(g_budget_once, init_budget);
  return g_budget.load();
}

void set_refinement_budget(std::size_t budget) {
  if (budget == 0) throw InputError("refinement budget must be at least 1");
  std::call_once(g_budget_once, [] {});
  g_budget.store(budget);
}

// ---------------------------------------------------------------- Oracle

Oracle::Oracle(std::unique_ptr<IntervalSource> source) : source_(std::move(source)) {
  current_ = source_->pull(0);
  pulls_ = 1;
}

const RationalInterval& Oracle::refine() {
  RationalInterval next = source_->pull(pulls_);
  if (!current_.contains(next)) {
    throw InputError("oracle " + source_->describe() + " produced non-nested interval " +
                     next.to_string() + " after " + current_.to_string());
  }
  current_ = std::move(next);
  ++pulls_;
  return current_;
}

const RationalInterval& Oracle::refine_to(const BigRational& width, std::size_t budget) {
  std::size_t spent = 0;
  while (current_.width() > width) {
    if (spent++ >= budget) {
      throw NonTerminating("refinement budget of " + std::to_string(budget) +
                           " pulls exhausted on " + source_->describe());
    }
    refine();
  }
  return current_;
}

OracleHandle decimal_oracle(const std::string& literal) {
  return std::make_shared<Oracle>(std::make_unique<DecimalSource>(literal));
}

OracleHandle function_oracle(std::function<RationalInterval(std::size_t)> f, std::string name) {
  return std::make_shared<Oracle>(std::make_unique<FunctionSource>(std::move(f), std::move(name)));
}

// ---------------------------------------------------------------- RealValue

RationalInterval RealValue::enclosure(const BigRational& width) const {
  switch (kind()) {
    case Kind::rational:
      return RationalInterval(rational());
    case Kind::algebraic:
      return element_interval(algebraic(), width);
    case Kind::oracle:
      return oracle()->refine_to(width, refinement_budget());
  }
  throw InputError("unknown real value kind");
}

std::string RealValue::describe() const {
  switch (kind()) {
    case Kind::rational:
      return to_string(rational());
    case Kind::algebraic: {
      std::string s = "algebraic(";
      const auto& c = algebraic().coords();
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + to_string(c[i]);
      return s + " mod " + algebraic().field()->min_poly().to_string() + ")";
    }
    case Kind::oracle:
      return oracle()->describe();
  }
  return "?";
}

CertifiedFloor floor_certified(Oracle& oracle, std::size_t budget) {
  std::size_t spent = 0;
  while (true) {
    const RationalInterval& iv = oracle.current();
    BigInt k = floor_of(iv.lo());
    if (iv.hi() < BigRational(k + 1)) return {k, iv.width()};
    if (spent++ >= budget) {
      throw NonTerminating("floor not certified within " + std::to_string(budget) +
                           " pulls on " + oracle.describe() + ", last enclosure " + iv.to_string());
    }
    oracle.refine();
  }
}

CertifiedFloor floor_certified(const RealValue& x) {
  switch (x.kind()) {
    case RealValue::Kind::rational:
      return {floor_of(x.rational()), BigRational(0)};
    case RealValue::Kind::algebraic:
      return {floor_exact(x.algebraic()), BigRational(0)};
    case RealValue::Kind::oracle:
      return floor_certified(*x.oracle(), refinement_budget());
  }
  throw InputError("unknown real value kind");
}

BigInt floor_exact(const RealValue& x) { return floor_certified(x).value; }

bool is_integer(const RealValue& x) {
  switch (x.kind()) {
    case RealValue::Kind::rational:
      return is_integral(x.rational());
    case RealValue::Kind::algebraic:
      return x.algebraic().is_rational() && is_integral(x.algebraic().rational_value());
    case RealValue::Kind::oracle:
      throw UndecidableForOracle("integrality of an oracle value is undecidable");
  }
  throw InputError("unknown real value kind");
}

int compare(const RealValue& x, const BigRational& q) {
  switch (x.kind()) {
    case RealValue::Kind::rational:
      return sgn(BigRational(x.rational() - q));
    case RealValue::Kind::algebraic:
      return exact_sign(x.algebraic() - q);
    case RealValue::Kind::oracle: {
      Oracle& o = *x.oracle();
      std::size_t budget = refinement_budget();
      for (std::size_t spent = 0;; ++spent) {
        const RationalInterval& iv = o.current();
        if (iv.lo() > q) return 1;
        if (iv.hi() < q) return -1;
        if (spent >= budget) throw NonTerminating("comparison not certified on " + o.describe());
        o.refine();
      }
    }
  }
  throw InputError("unknown real value kind");
}

std::optional<RealValue> exact_difference(const RealValue& x, const RealValue& y) {
  using K = RealValue::Kind;
  if (x.kind() == K::oracle || y.kind() == K::oracle) return std::nullopt;
  if (x.kind() == K::rational && y.kind() == K::rational) return RealValue(BigRational(x.rational() - y.rational()));
  if (x.kind() == K::algebraic && y.kind() == K::algebraic) {
    const FieldHandle& fx = x.algebraic().field();
    const FieldHandle& fy = y.algebraic().field();
    if (fx != fy && !fx->same_generator(*fy)) return std::nullopt;
    return RealValue(x.algebraic() - FieldElement(fx, y.algebraic().coords()));
  }
  if (x.kind() == K::algebraic) return RealValue(x.algebraic() - y.rational());
  return RealValue(BigRational(-1) * (y.algebraic() - x.rational()));
}

RationalInterval difference_enclosure(const RealValue& x, const RealValue& y, const BigRational& width) {
  if (auto d = exact_difference(x, y)) return d->enclosure(width);
  BigRational half = width / 2;
  return x.enclosure(half) - y.enclosure(half);
}

int compare_abs_difference(const RealValue& x, const RealValue& y, const BigRational& b) {
  if (auto d = exact_difference(x, y)) {
    int upper = compare(*d, b);
    int lower = compare(*d, BigRational(-b));
    if (upper < 0 && lower > 0) return -1;
    if (upper > 0 || lower < 0) return 1;
    return 0;
  }
  BigRational w = b == 0 ? BigRational(1, 1 << 20) : BigRational(b / 4);
  const std::size_t budget = refinement_budget();
  // Near-ties need precision comparable to b itself, so the extra bits double
  // every round.
  mp_bitcnt_t shift = 16;
  for (std::size_t spent = 0;; ++spent) {
    RationalInterval gap = difference_enclosure(x, y, w).abs();
    if (gap.hi() < b) return -1;
    if (gap.lo() > b) return 1;
    if (spent >= budget) {
      throw NonTerminating("|x - y| against " + to_string(b) + " not certified within budget");
    }
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), shift);
    shift *= 2;
  }
}

}  // namespace mcf
