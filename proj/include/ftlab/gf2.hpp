#pragma once

#include <optional>
#include <vector>

#include "ftlab/bitvec.hpp"

namespace ftlab {

// Matrix over GF(2) held as column vectors (each column a BitVec of `rows`
// bits). Columns map 1:1 to the edges of a decoder query.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(size_t rows) : rows_(rows) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_.size(); }

  void add_column(const BitVec& col) {
    require(col.size() == rows_, ErrorKind::DimensionMismatch, "column height mismatch");
    cols_.push_back(col);
  }

  const BitVec& column(size_t c) const { return cols_[c]; }

  // A * x for a 0/1 vector x over the columns.
  BitVec multiply(const BitVec& x) const;

 private:
  size_t rows_ = 0;
  std::vector<BitVec> cols_;
};

// Solves A x = w over GF(2) by Gaussian elimination on the augmented system;
// rows are packed 64 columns per word. Returns any solution, or nullopt when
// w is outside the column span. A returned x always satisfies A x == w.
std::optional<BitVec> gf2_solve(const Gf2Matrix& a, const BitVec& w);

}  // namespace ftlab
