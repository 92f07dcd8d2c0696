#include "qc/binary_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace qc {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), pos_(rows) {}

BinaryMatrix BinaryMatrix::from_rows(std::size_t rows, std::size_t cols,
                                     std::vector<std::vector<std::uint32_t>> positions) {
  if (positions.size() != rows) throw std::invalid_argument("row count mismatch");
  for (const auto& row : positions) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] >= cols) throw std::invalid_argument("column index out of range");
      if (i > 0 && row[i] <= row[i - 1])
        throw std::invalid_argument("row positions must be strictly increasing");
    }
  }
  BinaryMatrix m(rows, cols);
  m.pos_ = std::move(positions);
  return m;
}

void BinaryMatrix::push(std::size_t r, std::uint32_t c) {
  if (r >= rows_ || c >= cols_) throw std::invalid_argument("position out of range");
  auto& row = pos_[r];
  if (!row.empty() && c <= row.back())
    throw std::invalid_argument("row positions must be pushed in increasing order");
  row.push_back(c);
}

std::size_t BinaryMatrix::ones() const {
  std::size_t total = 0;
  for (const auto& row : pos_) total += row.size();
  return total;
}

std::vector<std::uint32_t> BinaryMatrix::col_weights() const {
  std::vector<std::uint32_t> w(cols_, 0);
  for (const auto& row : pos_)
    for (std::uint32_t c : row) ++w[c];
  return w;
}

std::vector<std::uint32_t> BinaryMatrix::row_weights() const {
  std::vector<std::uint32_t> w(rows_);
  for (std::size_t r = 0; r < rows_; ++r) w[r] = static_cast<std::uint32_t>(pos_[r].size());
  return w;
}

PackedMatrix::PackedMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), w_(rows * words_, 0) {}

PackedMatrix PackedMatrix::from(const BinaryMatrix& m) {
  PackedMatrix p(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::uint32_t c : m.row(r)) p.set(r, c);
  return p;
}

void PackedMatrix::xor_rows(std::size_t dst, std::size_t src) {
  std::uint64_t* d = w_.data() + dst * words_;
  const std::uint64_t* s = w_.data() + src * words_;
  for (std::size_t i = 0; i < words_; ++i) d[i] ^= s[i];
}

std::size_t PackedMatrix::row_popcount(std::size_t r) const {
  const std::uint64_t* p = w_.data() + r * words_;
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_; ++i) total += std::popcount(p[i]);
  return total;
}

void PackedMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::uint64_t* pa = w_.data() + a * words_;
  std::uint64_t* pb = w_.data() + b * words_;
  for (std::size_t i = 0; i < words_; ++i) std::swap(pa[i], pb[i]);
}

Rref rref_gf2(const BinaryMatrix& m) {
  PackedMatrix a = PackedMatrix::from(m);
  std::vector<std::uint32_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows() && !a.get(pivot, col)) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a.get(i, col)) a.xor_rows(i, r);
    pivots.push_back(static_cast<std::uint32_t>(col));
    ++r;
  }
  // keep only the nonzero (reduced) rows
  PackedMatrix reduced(pivots.size(), a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    auto dst = reduced.row(i);
    auto src = a.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return {std::move(reduced), std::move(pivots)};
}

}  // namespace qc
