#include "ftlab/gf2.hpp"

namespace ftlab {

BitVec Gf2Matrix::multiply(const BitVec& x) const {
  require(x.size() == cols(), ErrorKind::DimensionMismatch, "vector length mismatch");
  BitVec out(rows_);
  for (size_t c = 0; c < cols(); ++c)
    if (x.get(c)) out.xor_with(cols_[c]);
  return out;
}

std::optional<BitVec> gf2_solve(const Gf2Matrix& a, const BitVec& w) {
  require(w.size() == a.rows(), ErrorKind::DimensionMismatch, "rhs length mismatch");
  size_t rows = a.rows();
  size_t cols = a.cols();

  // Row-major augmented matrix [A | w]; bit c of a row is column c, bit
  // `cols` is the augmented entry.
  std::vector<BitVec> row(rows, BitVec(cols + 1));
  for (size_t c = 0; c < cols; ++c) {
    const BitVec& col = a.column(c);
    for (size_t r = 0; r < rows; ++r)
      if (col.get(r)) row[r].set(c, true);
  }
  for (size_t r = 0; r < rows; ++r)
    if (w.get(r)) row[r].set(cols, true);

  std::vector<size_t> pivot_row_of_col(cols, SIZE_MAX);
  size_t next_row = 0;
  for (size_t c = 0; c < cols && next_row < rows; ++c) {
    size_t pivot = SIZE_MAX;
    for (size_t r = next_row; r < rows; ++r)
      if (row[r].get(c)) {
        pivot = r;
        break;
      }
    if (pivot == SIZE_MAX) continue;
    std::swap(row[pivot], row[next_row]);
    for (size_t r = 0; r < rows; ++r)
      if (r != next_row && row[r].get(c)) row[r].xor_with(row[next_row]);
    pivot_row_of_col[c] = next_row;
    ++next_row;
  }

  // Inconsistent iff some zero row of A carries a 1 in the augment.
  for (size_t r = next_row; r < rows; ++r)
    if (row[r].get(cols)) return std::nullopt;

  BitVec x(cols);
  for (size_t c = 0; c < cols; ++c)
    if (pivot_row_of_col[c] != SIZE_MAX && row[pivot_row_of_col[c]].get(cols)) x.set(c, true);
  return x;
}

}  // namespace ftlab
