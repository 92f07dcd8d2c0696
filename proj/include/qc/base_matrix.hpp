#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qc/galois.hpp"

namespace qc {

/// Two cyclic subgroups of GF(q)* from a coprime factorization q-1 = c*n:
/// g1 generated by beta = alpha^c (order n), g2 by delta = alpha^n (order c).
/// Coprimality forces g1 and g2 to intersect in {1} only.
struct SubgroupPair {
  std::uint32_t c = 0;
  std::uint32_t n = 0;
  FieldElem beta;
  FieldElem delta;
  std::vector<FieldElem> g1;  // beta^0 .. beta^{n-1}
  std::vector<FieldElem> g2;  // delta^0 .. delta^{c-1}
};

SubgroupPair make_subgroup_pair(const Field& f, std::uint32_t c, std::uint32_t n);

/// How a BaseMatrix was built, which fixes what the structural checks mean.
enum class BaseKind {
  kPlain,  // arbitrary field matrix
  kBlock,  // a single n x n block, rows/cols shift by beta
  kFull,   // c x c array of n x n blocks, (q-1) x (q-1) overall
};

/// A k x N matrix over GF(q), the q-ary stage of every construction here.
/// Entries live in a single shared field; kBlock/kFull instances carry the
/// (c, n) structure they were built with.
class BaseMatrix {
 public:
  BaseMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols,
             std::vector<FieldElem> entries, BaseKind kind = BaseKind::kPlain,
             std::uint32_t c = 0, std::uint32_t n = 0, std::uint32_t delta_shift = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<FieldElem>& entries() const { return entries_; }

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }

  BaseKind kind() const { return kind_; }
  std::uint32_t block_c() const { return c_; }
  std::uint32_t block_n() const { return n_; }
  std::uint32_t delta_shift() const { return delta_shift_; }

 private:
  std::shared_ptr<const Field> field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> entries_;
  BaseKind kind_ = BaseKind::kPlain;
  std::uint32_t c_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t delta_shift_ = 0;  // (j - i) mod c for kBlock
};

/// The n x n block W_{i,j}: entry (k, l) = delta^{j-i} beta^k - beta^l.
BaseMatrix build_block(std::shared_ptr<const Field> f, const SubgroupPair& sp,
                       std::uint32_t i, std::uint32_t j);

/// The full (q-1) x (q-1) matrix assembled from all c x c blocks. Rejects
/// factorizations with c*n != q-1 or gcd(c, n) != 1.
BaseMatrix build_full(std::shared_ptr<const Field> f, std::uint32_t c, std::uint32_t n);

/// The n x c matrix of first block-columns: entry (k, j) = delta^j beta^k - 1.
BaseMatrix build_wstar(std::shared_ptr<const Field> f, const SubgroupPair& sp);

struct RdCounterexample {
  std::size_t row1 = 0;
  std::size_t row2 = 0;
  std::uint32_t scalar1 = 0;  // exponent e of alpha^e scaling row1
  std::uint32_t scalar2 = 0;  // exponent f scaling row2
  std::vector<std::size_t> positions;  // all agreeing positions, ascending
};

struct RdVerdict {
  bool holds = false;
  std::optional<RdCounterexample> counterexample;
};

/// Exhaustive row-distance check: every pair of distinct rows, under every
/// pair of nonzero scalings, must differ in at least width-1 positions.
/// Reports the first violation in (row1, row2, scalar1, scalar2) scan order.
RdVerdict verify_rd_constraint(const BaseMatrix& w);

/// One flag per structural property of the block construction:
/// 1 rows shift by beta, 2 columns shift by beta, 3 distinct entries per
/// row/column, 4 distinct rows/columns differ in every position, 5 shifted
/// blocks are all nonzero, 6 diagonal blocks are zero exactly on their
/// diagonal. Properties 1-3 and 5-6 are per-block statements; property 4 is
/// also checked across full-matrix rows for kFull.
struct StructuralReport {
  bool row_shift = false;
  bool col_shift = false;
  bool distinct_in_line = false;
  bool lines_differ_everywhere = false;
  bool offdiag_blocks_nonzero = false;
  bool diag_blocks_zero_diagonal = false;

  bool all() const {
    return row_shift && col_shift && distinct_in_line && lines_differ_everywhere &&
           offdiag_blocks_nonzero && diag_blocks_zero_diagonal;
  }
};

StructuralReport verify_structural_properties(const BaseMatrix& w);

}  // namespace qc
