#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qc/base_matrix.hpp"
#include "qc/binary_matrix.hpp"

namespace qc {

/// Weight histogram: weight -> number of columns (or rows) with that weight.
using WeightHist = std::map<std::uint32_t, std::uint32_t>;

/// A grid of CPM exponents and zero-matrix markers: the compact form of a
/// dispersed array. Entry e in [0, L) stands for the L x L circulant P^e
/// whose row r has its 1 at column (r + e) mod L; kZm stands for the L x L
/// zero matrix.
class CpmArray {
 public:
  static constexpr std::int32_t kZm = -1;

  CpmArray(std::uint32_t block_size, std::size_t rows, std::size_t cols,
           std::vector<std::int32_t> grid, std::uint32_t q = 0);

  std::uint32_t block_size() const { return block_size_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int32_t at(std::size_t r, std::size_t c) const { return grid_[r * cols_ + c]; }
  bool is_zm(std::size_t r, std::size_t c) const { return at(r, c) == kZm; }
  const std::vector<std::int32_t>& grid() const { return grid_; }

  std::size_t zm_count() const;
  std::vector<std::uint32_t> row_block_weights() const;  // non-ZM count per row block
  std::vector<std::uint32_t> col_block_weights() const;

  /// Source field size; L + 1 for arrays dispersed from a field matrix,
  /// 0 when unknown (hand-built grids).
  std::uint32_t q() const { return q_; }

  /// Block indices into the array this one was cut from; empty for
  /// freshly dispersed arrays.
  const std::vector<std::uint32_t>& source_rows() const { return src_rows_; }
  const std::vector<std::uint32_t>& source_cols() const { return src_cols_; }
  void set_source(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols);

 private:
  std::uint32_t block_size_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int32_t> grid_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> src_rows_;
  std::vector<std::uint32_t> src_cols_;
};

/// Replaces each entry of w by its CPM exponent (ZM for zero): the
/// (q-1)-fold binary array dispersion in compact form.
CpmArray disperse(const BaseMatrix& w);

/// Selects the given row and column blocks (indices distinct, in range).
CpmArray subarray(const CpmArray& h, const std::vector<std::uint32_t>& row_blocks,
                  const std::vector<std::uint32_t>& col_blocks);

/// Deterministic ZM-free selection: row blocks 0..gamma-1, column blocks
/// gamma..gamma+rho-1 mod cols. Throws if the rule hits a ZM, naming the
/// colliding block.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
select_zm_free(const CpmArray& h, std::uint32_t gamma, std::uint32_t rho);

/// Binary masking matrix Z with validated column/row weight histograms.
class MaskMatrix {
 public:
  MaskMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits,
             WeightHist col_hist, WeightHist row_hist);

  static MaskMatrix from_bits(std::size_t rows, std::size_t cols,
                              std::vector<std::uint8_t> bits);
  static MaskMatrix all_ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  const WeightHist& col_hist() const { return col_hist_; }
  const WeightHist& row_hist() const { return row_hist_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
  WeightHist col_hist_;
  WeightHist row_hist_;
};

/// Element-wise masking M = Z (x) H: keep the CPM where z = 1, ZM where 0.
CpmArray mask(const CpmArray& h, const MaskMatrix& z);

/// Random mask with exact column and row weight histograms, built by seeded
/// stub matching plus swap repair of duplicate edges. Deterministic per seed.
MaskMatrix build_mask_random(std::uint32_t gamma, std::uint32_t rho,
                             const WeightHist& col_hist, const WeightHist& row_hist,
                             std::uint64_t seed);

/// Expands the compact grid into the explicit binary matrix.
BinaryMatrix expand(const CpmArray& h);

}  // namespace qc
