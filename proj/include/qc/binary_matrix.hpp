#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qc {

/// Sparse GF(2) matrix: per-row strictly increasing 1-positions.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  /// Validates that every row is strictly increasing and in range.
  static BinaryMatrix from_rows(std::size_t rows, std::size_t cols,
                                std::vector<std::vector<std::uint32_t>> positions);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const std::uint32_t> row(std::size_t r) const { return pos_[r]; }
  std::size_t row_weight(std::size_t r) const { return pos_[r].size(); }
  std::size_t ones() const;

  /// Appends a 1 at (r, c); positions within a row must arrive in
  /// strictly increasing column order.
  void push(std::size_t r, std::uint32_t c);

  std::vector<std::uint32_t> col_weights() const;
  std::vector<std::uint32_t> row_weights() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::uint32_t>> pos_;
};

/// Dense bit-packed GF(2) matrix, 64 columns per word.
class PackedMatrix {
 public:
  PackedMatrix() = default;
  PackedMatrix(std::size_t rows, std::size_t cols);

  static PackedMatrix from(const BinaryMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  std::span<std::uint64_t> row(std::size_t r) { return {w_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {w_.data() + r * words_, words_};
  }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { w_[r * words_ + (c >> 6)] |= 1ull << (c & 63); }
  void flip(std::size_t r, std::size_t c) { w_[r * words_ + (c >> 6)] ^= 1ull << (c & 63); }

  void xor_rows(std::size_t dst, std::size_t src);
  std::size_t row_popcount(std::size_t r) const;
  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Row-reduced echelon form over GF(2). `mat` keeps the `pivot_cols.size()`
/// reduced nonzero rows; row i has its leading 1 at pivot_cols[i] and zeros
/// in every other pivot column.
struct Rref {
  PackedMatrix mat;
  std::vector<std::uint32_t> pivot_cols;
};

Rref rref_gf2(const BinaryMatrix& m);

}  // namespace qc
