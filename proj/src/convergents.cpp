#include "mcf/convergents.hpp"

#include <memory>
#include <utility>

#include "linear_fractional.hpp"
#include "mcf/errors.hpp"

namespace mcf {

Column initial_column(std::size_t m, std::size_t k) {
  Column c(m + 1, BigInt(0));
  if (k >= 1 && k <= m) c[k - 1] = 1;
  if (k == m + 1) c[m] = 1;
  return c;
}

// ---------------------------------------------------------------- stream

ConvergentStream::ConvergentStream(const PartialQuotients& pq, bool keep_history)
    : pq_(pq), m_(pq.m), keep_(keep_history) {
  if (m_ == 0) throw InputError("convergents need m >= 1");
  for (std::size_t k = 1; k <= m_ + 1; ++k) window_.push_back(initial_column(m_, k));
}

bool ConvergentStream::advance() {
  auto n = static_cast<std::size_t>(index_ + 1);
  for (std::size_t j = 0; j < m_; ++j) {
    if (!pq_.has(j, n)) return false;
  }
  Column next(window_.back());  // the A_{n-m-1} term
  for (std::size_t j = 0; j < m_; ++j) {
    const BigInt& a = pq_.at(j, n);
    if (a == 0) continue;
    const Column& prev = window_[j];
    for (std::size_t i = 0; i <= m_; ++i) next[i] += a * prev[i];
  }
  window_.pop_back();
  window_.push_front(std::move(next));
  ++index_;
  if (keep_) history_.push_back(window_.front());
  return true;
}

const Column& ConvergentStream::column(std::size_t back) const {
  if (back > m_) throw InputError("convergent window holds only m+1 columns");
  return window_[back];
}

std::vector<Column> conv_stream(const PartialQuotients& pq, std::size_t count) {
  ConvergentStream s(pq);
  std::vector<Column> out;
  while (out.size() < count && s.advance()) out.push_back(s.column());
  return out;
}

ConvergentTable::ConvergentTable(const PartialQuotients& pq, std::size_t count) : m_(pq.m) {
  for (std::size_t k = m_ + 1; k >= 1; --k) cols_.push_back(initial_column(m_, k));
  for (Column& c : conv_stream(pq, count)) cols_.push_back(std::move(c));
}

const Column& ConvergentTable::at(std::ptrdiff_t n) const {
  std::ptrdiff_t pos = n + static_cast<std::ptrdiff_t>(m_) + 1;
  if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(cols_.size())) {
    throw InputError("convergent index " + std::to_string(n) + " out of range");
  }
  return cols_[static_cast<std::size_t>(pos)];
}

// ---------------------------------------------------------------- matrices

IntMatrix factor_matrix(const PartialQuotients& pq, std::size_t n) {
  const std::size_t m = pq.m;
  IntMatrix f(m + 1, std::vector<BigInt>(m + 1, BigInt(0)));
  for (std::size_t j = 0; j < m; ++j) {
    f[j][0] = pq.at(j, n);
    f[j][j + 1] = 1;
  }
  f[m][0] = 1;
  return f;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t r = x.size();
  const std::size_t inner = y.size();
  const std::size_t c = y.empty() ? 0 : y[0].size();
  IntMatrix out(r, std::vector<BigInt>(c, BigInt(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

BigInt determinant(IntMatrix x) {
  // Bareiss fraction-free elimination.
  const std::size_t n = x.size();
  if (n == 0) return BigInt(1);
  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (x[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && x[p][k] == 0) ++p;
      if (p == n) return BigInt(0);
      std::swap(x[k], x[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        x[i][j] = (x[i][j] * x[k][k] - x[i][k] * x[k][j]) / prev;
      }
    }
    prev = x[k][k];
  }
  return sign * x[n - 1][n - 1];
}

IntMatrix matrix_form(const PartialQuotients& pq, std::size_t n) {
  if (pq.full_length() <= n) throw InputError("matrix_form: not enough quotients for index " + std::to_string(n));
  IntMatrix p = factor_matrix(pq, 0);
  for (std::size_t t = 1; t <= n; ++t) p = mat_mul(p, factor_matrix(pq, t));
  return p;
}

// ---------------------------------------------------------------- tilde values

std::vector<BigInt> tilde(const Column& cur, const Column& prev) {
  const std::size_t m = cur.size() - 1;
  std::vector<BigInt> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = cur[i] * prev[m] - prev[i] * cur[m];
  return t;
}

std::vector<AuxValues> aux_stream(const PartialQuotients& pq, std::size_t count) {
  if (pq.m != 2) throw InputError("aux_stream needs m = 2");
  ConvergentTable tab(pq, count);
  std::vector<AuxValues> out;
  const std::ptrdiff_t last = tab.last();
  for (std::ptrdiff_t n = -2; n <= last; ++n) {
    const Column& c0 = tab.at(n);
    const Column& c1 = tab.at(n - 1);
    AuxValues v;
    v.n = n;
    v.At = c0[0] * c1[2] - c0[2] * c1[0];
    v.Bt = c0[1] * c1[2] - c1[1] * c0[2];
    v.Ut = c0[0] * c1[1] - c1[0] * c0[1];
    // The n-2 companions start at n = -1; at n = -2 they are left at zero.
    if (n >= -1) {
      const Column& c2 = tab.at(n - 2);
      v.Att = c0[0] * c2[2] - c0[2] * c2[0];
      v.Btt = c0[1] * c2[2] - c2[1] * c0[2];
      v.Utt = c0[0] * c2[1] - c2[0] * c0[1];
    }
    if (n >= 1) {
      auto idx = static_cast<std::size_t>(n + 2);
      const AuxValues& p1 = out[idx - 1];
      const AuxValues& p2 = out[idx - 2];
      const AuxValues& p3 = out[idx - 3];
      const BigInt& bn = pq.at(1, static_cast<std::size_t>(n));
      const BigInt& an1 = pq.at(0, static_cast<std::size_t>(n - 1));
      BigInt ra = -bn * p1.At - an1 * p2.At + p3.At;
      BigInt rb = -bn * p1.Bt - an1 * p2.Bt + p3.Bt;
      if (ra != v.At) throw RecursionMismatch("tilde A recursion disagrees with definition", static_cast<std::size_t>(n));
      if (rb != v.Bt) throw RecursionMismatch("tilde B recursion disagrees with definition", static_cast<std::size_t>(n));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- limit oracle

namespace {

class LimitSource final : public IntervalSource {
 public:
  LimitSource(PartialQuotients pq, std::size_t coordinate)
      : pq_(std::move(pq)), coord_(coordinate) {
    if (coord_ >= pq_.m) throw InputError("limit oracle coordinate out of range");
    product_ = factor_matrix(pq_, 0);
  }

  RationalInterval pull(std::size_t k) override {
    const std::size_t L = k + 1;
    if (L >= pq_.full_length()) {
      throw NonTerminating("limit oracle exhausted: only " + std::to_string(pq_.full_length()) +
                           " quotient indices known");
    }
    while (built_ + 1 < L) {
      ++built_;
      product_ = mat_mul(product_, factor_matrix(pq_, built_));
    }
    // alpha_0 = P (alpha_L, 1) up to scale, alpha_L in the box of index L.
    std::vector<RationalInterval> box;
    for (std::size_t j = 0; j < pq_.m; ++j) {
      const BigInt& a = pq_.at(j, L);
      box.emplace_back(BigRational(a), BigRational(a + 1));
    }
    auto e = detail::ratio_enclosure(product_[coord_], product_[pq_.m], box);
    if (!e) throw NonTerminating("limit oracle: denominator vanishes on the tail box");
    RationalInterval out = prev_ ? prev_->intersect(*e) : *e;
    prev_ = out;
    return out;
  }

  std::string describe() const override {
    return "mcf-limit(coordinate " + std::to_string(coord_ + 1) + ")";
  }

 private:
  PartialQuotients pq_;
  std::size_t coord_;
  IntMatrix product_;
  std::size_t built_ = 0;
  std::optional<RationalInterval> prev_;
};

}  // namespace

OracleHandle mcf_limit_oracle(const PartialQuotients& pq, std::size_t coordinate) {
  return std::make_shared<Oracle>(std::make_unique<LimitSource>(pq, coordinate));
}

}  // namespace mcf
