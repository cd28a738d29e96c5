#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "mcf/bigint.hpp"
#include "mcf/expansion.hpp"
#include "mcf/real_value.hpp"

namespace mcf {

/// (A^(1)_n, ..., A^(m)_n, C_n); the last entry is the denominator.
using Column = std::vector<BigInt>;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// Column at index -k, 1 <= k <= m+1: A^(i)_{-k} = [i == k], C_{-k} = [k == m+1].
Column initial_column(std::size_t m, std::size_t k);

/// Streams convergent columns over the indices where every sequence of `pq`
/// has an entry. Only the last m+1 columns are retained unless history is
/// requested. `pq` is read at each advance, so it may grow between calls; it
/// must outlive the stream.
class ConvergentStream {
 public:
  explicit ConvergentStream(const PartialQuotients& pq, bool keep_history = false);

  /// Computes the next column. False when the quotients are exhausted.
  bool advance();
  /// Index of the newest column; -1 before the first advance.
  std::ptrdiff_t index() const { return index_; }
  /// Column at index() - back, for back <= m (negative indices included).
  const Column& column(std::size_t back = 0) const;
  /// Columns 0..index(); empty unless history was requested.
  const std::vector<Column>& history() const { return history_; }
  std::size_t m() const { return m_; }

 private:
  const PartialQuotients& pq_;
  std::size_t m_;
  bool keep_;
  std::ptrdiff_t index_ = -1;
  std::deque<Column> window_;  // front is the newest column
  std::vector<Column> history_;
};

/// Columns 0..count-1 (fewer if the quotients run out).
std::vector<Column> conv_stream(const PartialQuotients& pq, std::size_t count);

/// Random access to convergent columns from index -(m+1) up to the last one
/// computed; used where formulas reach back to negative indices.
class ConvergentTable {
 public:
  ConvergentTable(const PartialQuotients& pq, std::size_t count);
  const Column& at(std::ptrdiff_t n) const;
  std::ptrdiff_t last() const { return static_cast<std::ptrdiff_t>(cols_.size()) - static_cast<std::ptrdiff_t>(m_) - 2; }
  std::size_t m() const { return m_; }

 private:
  std::size_t m_;
  std::vector<Column> cols_;  // cols_[n + m + 1]
};

/// The single factor M_n: first column (a^(1)_n, ..., a^(m)_n, 1), identity shifted right.
IntMatrix factor_matrix(const PartialQuotients& pq, std::size_t n);
IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
BigInt determinant(IntMatrix x);

/// M_0 M_1 ... M_n. Entry (i, k) is the i-th convergent coordinate at index n-k.
IntMatrix matrix_form(const PartialQuotients& pq, std::size_t n);

/// The six auxiliary sequences of an m = 2 expansion at one index.
struct AuxValues {
  std::ptrdiff_t n;
  BigInt At, Bt, Ut;     // index n against n-1
  BigInt Att, Btt, Utt;  // index n against n-2
};

/// Auxiliary values for n = -2..count-1 computed from their definitions, with
/// At and Bt checked against the three-term recursion for n >= 1. Throws
/// RecursionMismatch on disagreement. Requires m = 2.
std::vector<AuxValues> aux_stream(const PartialQuotients& pq, std::size_t count);

/// At_n^(i) = A^(i)_n C_{n-1} - A^(i)_{n-1} C_n for every coordinate, from two
/// adjacent columns.
std::vector<BigInt> tilde(const Column& cur, const Column& prev);

/// Oracle for coordinate `coordinate` (0-based) of the limit of an MCF known
/// through its quotients: pull k bounds the tail after the first k+2 indices
/// by the box of possible complete quotients. Exhausted at the end of `pq`.
OracleHandle mcf_limit_oracle(const PartialQuotients& pq, std::size_t coordinate);

}  // namespace mcf
