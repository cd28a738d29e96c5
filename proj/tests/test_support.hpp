#pragma once

// Test-side oracles. They are written against gmpxx directly and share no
// code with the library routines they check.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "mcf/expansion.hpp"
#include "mcf/periodic_cubic.hpp"

namespace mcf::testing {

using Mat = std::vector<std::vector<mpz_class>>;

inline Mat mat_identity(std::size_t k) {
  Mat r(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) r[i][i] = 1;
  return r;
}

inline Mat mat_mul_naive(const Mat& x, const Mat& y) {
  const std::size_t k = x.size();
  Mat r(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) r[i][j] += x[i][l] * y[l][j];
  return r;
}

/// Product of the step matrices: column 0 of the result is
/// (A^(1)_n, ..., A^(m)_n, C_n).
inline Mat convergent_product(const PartialQuotients& pq, std::size_t n) {
  const std::size_t m = pq.m;
  Mat p = mat_identity(m + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    Mat f(m + 1, std::vector<mpz_class>(m + 1, 0));
    for (std::size_t j = 0; j < m; ++j) f[j][0] = pq.at(j, t);
    f[m][0] = 1;
    for (std::size_t j = 0; j < m; ++j) f[j][j + 1] = 1;
    p = mat_mul_naive(p, f);
  }
  return p;
}

/// Jacobi-Perron on rationals with interruptions, straight from the step
/// equations. Returns per-sequence entries.
inline std::vector<std::vector<mpz_class>> naive_expand_rational(std::vector<mpq_class> x, std::size_t steps) {
  std::vector<std::vector<mpz_class>> seqs(x.size());
  for (std::size_t n = 0; n < steps && !x.empty(); ++n) {
    const std::size_t m = x.size();
    std::vector<mpz_class> a(m);
    for (std::size_t i = 0; i < m; ++i) {
      mpz_fdiv_q(a[i].get_mpz_t(), x[i].get_num_mpz_t(), x[i].get_den_mpz_t());
      seqs[i].push_back(a[i]);
    }
    mpq_class last = x[m - 1] - a[m - 1];
    if (last == 0) {
      x.pop_back();
      if (x.empty()) break;
      // Same index again in one dimension less: the entries just pushed for
      // the surviving coordinates are recomputed from the same values.
      for (std::size_t i = 0; i < x.size(); ++i) seqs[i].pop_back();
      --n;
      continue;
    }
    std::vector<mpq_class> next(m);
    next[0] = 1 / last;
    for (std::size_t i = 1; i < m; ++i) next[i] = (x[i - 1] - a[i - 1]) / last;
    x = next;
  }
  return seqs;
}

/// Random sequences that are admissible because a^(1)_n strictly exceeds
/// every other entry at n >= 1.
inline PartialQuotients dominant_pq(std::mt19937_64& rng, std::size_t m, std::size_t length, int spread = 4,
                                    bool zero_start = false) {
  PartialQuotients pq(m);
  std::uniform_int_distribution<int> small(0, spread);
  for (std::size_t n = 0; n < length; ++n) {
    int top = 0;
    std::vector<int> v(m, 0);
    for (std::size_t j = 1; j < m; ++j) {
      v[j] = small(rng);
      top = std::max(top, v[j]);
    }
    v[0] = top + 1 + small(rng);
    if (n == 0) {
      std::uniform_int_distribution<int> start(zero_start ? 0 : -2, zero_start ? 0 : 3);
      for (auto& x : v) x = start(rng);
    }
    for (std::size_t j = 0; j < m; ++j) pq.seqs[j].push_back(mpz_class(v[j]));
  }
  return pq;
}

/// Random m = 2 sequences drawn from all small values and kept only when
/// admissible per the two-dimensional conditions, which are checked here
/// independently: a_n >= 1, 0 <= b_n <= a_n, b_{n+1} >= 1 when a_n = b_n.
inline PartialQuotients random_admissible_m2(std::mt19937_64& rng, std::size_t length, int max = 5,
                                             bool zero_start = false) {
  std::uniform_int_distribution<int> dist(0, max);
  PartialQuotients pq(2);
  pq.seqs[0].push_back(mpz_class(zero_start ? 0 : dist(rng)));
  pq.seqs[1].push_back(mpz_class(zero_start ? 0 : dist(rng)));
  bool need_b_positive = false;
  for (std::size_t n = 1; n < length; ++n) {
    int a, b;
    do {
      a = dist(rng);
      b = dist(rng);
    } while (a < 1 || b > a || (need_b_positive && b < 1));
    need_b_positive = a == b;
    pq.seqs[0].push_back(mpz_class(a));
    pq.seqs[1].push_back(mpz_class(b));
  }
  return pq;
}

/// Periodic specs admissible by dominance: a exceeds b at every index after 0.
inline PeriodicSpec random_periodic_spec(std::mt19937_64& rng, std::size_t k, std::size_t h, bool zero_start) {
  std::uniform_int_distribution<int> b_dist(0, 3), gap(1, 3);
  PeriodicSpec s;
  auto push = [&](std::vector<mpz_class>& va, std::vector<mpz_class>& vb) {
    int b = b_dist(rng);
    va.emplace_back(b + gap(rng));
    vb.emplace_back(b);
  };
  for (std::size_t i = 0; i < k; ++i) push(s.pre_a, s.pre_b);
  for (std::size_t i = 0; i < h; ++i) push(s.per_a, s.per_b);
  if (zero_start && k > 0) {
    s.pre_a[0] = 0;
    s.pre_b[0] = 0;
  }
  return s;
}

}  // namespace mcf::testing
