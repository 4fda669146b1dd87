#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dkh/rational.hpp"

namespace dkh {

// A sparse column: (row, value) pairs, rows strictly increasing, no zeros.
using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseColumn> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  // Adds v to entry (r, c). Keeps the column sorted and drops zeros.
  void add(std::size_t r, std::size_t c, const Rational& v);
  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const;
  // Restriction to the listed rows and columns, renumbered in list order.
  SparseMatrix submatrix(const std::vector<std::size_t>& row_ids,
                         const std::vector<std::size_t>& col_ids) const;
  std::string to_text() const;
};

// this * other, exact.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

// Column space rank maintained under column insertion. Runs on int64
// rationals and replays everything in GMP rationals on overflow.
class IncrementalRank {
 public:
  IncrementalRank();
  ~IncrementalRank();
  IncrementalRank(IncrementalRank&&) noexcept;
  IncrementalRank& operator=(IncrementalRank&&) noexcept;

  // Returns true when col is independent of the columns added so far.
  bool add(const SparseColumn& col);
  std::size_t rank() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::size_t rank_rational(const SparseMatrix& m);

// Basis of the right kernel {x : m x = 0}, each vector of length m.cols.
std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m);

// Kernel of the matrix with the given columns, built column by column: the
// vectors with born[k] < t span the kernel of the first t columns. Entries
// index the input order; vectors are scaled to primitive integers.
struct PrefixKernel {
  std::vector<SparseColumn> vectors;
  std::vector<std::size_t> born;  // vectors[k] appears once column born[k] is added
};
PrefixKernel prefix_kernel(const std::vector<const SparseColumn*>& columns);

}  // namespace dkh
