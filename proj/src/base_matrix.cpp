#include "qc/base_matrix.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qc {

SubgroupPair make_subgroup_pair(const Field& f, std::uint32_t c, std::uint32_t n) {
  if (c < 1 || n < 1 || static_cast<std::uint64_t>(c) * n != f.q() - 1)
    throw std::invalid_argument("c*n must equal q-1");
  if (std::gcd(c, n) != 1)
    throw std::invalid_argument("c and n must be coprime");
  SubgroupPair sp;
  sp.c = c;
  sp.n = n;
  sp.beta = f.alpha_pow(c);
  sp.delta = f.alpha_pow(n);
  sp.g1.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) sp.g1.push_back(f.pow(sp.beta, k));
  sp.g2.reserve(c);
  for (std::uint32_t k = 0; k < c; ++k) sp.g2.push_back(f.pow(sp.delta, k));
  return sp;
}

BaseMatrix::BaseMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols,
                       std::vector<FieldElem> entries, BaseKind kind,
                       std::uint32_t c, std::uint32_t n, std::uint32_t delta_shift)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      kind_(kind),
      c_(c),
      n_(n),
      delta_shift_(delta_shift) {
  if (!field_) throw std::invalid_argument("null field");
  if (rows_ == 0 || cols_ == 0 || entries_.size() != rows_ * cols_)
    throw std::invalid_argument("entry count does not match dimensions");
  for (const FieldElem& e : entries_)
    if (e.q != field_->q() || (!e.is_zero() && e.log >= static_cast<std::int32_t>(e.q - 1)))
      throw std::invalid_argument("entry from a different field");
}

BaseMatrix build_block(std::shared_ptr<const Field> f, const SubgroupPair& sp,
                       std::uint32_t i, std::uint32_t j) {
  if (i >= sp.c || j >= sp.c) throw std::invalid_argument("block index out of range");
  const Field& fd = *f;
  const std::uint32_t d = (j + sp.c - i) % sp.c;
  const FieldElem dpow = fd.pow(sp.delta, d);
  std::vector<FieldElem> entries;
  entries.reserve(static_cast<std::size_t>(sp.n) * sp.n);
  for (std::uint32_t k = 0; k < sp.n; ++k) {
    const FieldElem lead = fd.mul(dpow, sp.g1[k]);
    for (std::uint32_t l = 0; l < sp.n; ++l)
      entries.push_back(fd.sub(lead, sp.g1[l]));
  }
  return BaseMatrix(std::move(f), sp.n, sp.n, std::move(entries), BaseKind::kBlock,
                    sp.c, sp.n, d);
}

BaseMatrix build_full(std::shared_ptr<const Field> f, std::uint32_t c, std::uint32_t n) {
  const SubgroupPair sp = make_subgroup_pair(*f, c, n);
  const Field& fd = *f;
  const std::size_t size = fd.q() - 1;
  std::vector<FieldElem> entries(size * size);
  for (std::uint32_t i = 0; i < c; ++i) {
    for (std::uint32_t j = 0; j < c; ++j) {
      const FieldElem dpow = fd.pow(sp.delta, (j + c - i) % c);
      for (std::uint32_t k = 0; k < n; ++k) {
        const FieldElem lead = fd.mul(dpow, sp.g1[k]);
        FieldElem* row = entries.data() + (static_cast<std::size_t>(i) * n + k) * size;
        for (std::uint32_t l = 0; l < n; ++l)
          row[static_cast<std::size_t>(j) * n + l] = fd.sub(lead, sp.g1[l]);
      }
    }
  }
  return BaseMatrix(std::move(f), size, size, std::move(entries), BaseKind::kFull, c, n);
}

BaseMatrix build_wstar(std::shared_ptr<const Field> f, const SubgroupPair& sp) {
  const Field& fd = *f;
  std::vector<FieldElem> entries;
  entries.reserve(static_cast<std::size_t>(sp.n) * sp.c);
  for (std::uint32_t k = 0; k < sp.n; ++k)
    for (std::uint32_t j = 0; j < sp.c; ++j)
      entries.push_back(fd.sub(fd.mul(sp.g2[j], sp.g1[k]), fd.one()));
  return BaseMatrix(std::move(f), sp.n, sp.c, std::move(entries), BaseKind::kPlain,
                    sp.c, sp.n);
}

RdVerdict verify_rd_constraint(const BaseMatrix& w) {
  if (w.rows() < 2) throw std::invalid_argument("row-distance check needs at least 2 rows");
  const Field& f = w.field();
  const std::uint32_t L = f.q() - 1;
  const std::size_t width = w.cols();

  // Scaling both rows leaves zero entries zero and shifts nonzero logs, so
  // alpha^e w1 and alpha^f w2 agree at t iff both entries are zero there or
  // log w1[t] - log w2[t] = f - e (mod q-1). Counting positions per log
  // difference covers every scalar pair at once.
  std::vector<std::uint32_t> diff_count(L);
  for (std::size_t r1 = 0; r1 + 1 < w.rows(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < w.rows(); ++r2) {
      std::fill(diff_count.begin(), diff_count.end(), 0);
      std::uint32_t both_zero = 0;
      for (std::size_t t = 0; t < width; ++t) {
        const FieldElem a = w.at(r1, t), b = w.at(r2, t);
        if (a.is_zero() && b.is_zero())
          ++both_zero;
        else if (!a.is_zero() && !b.is_zero())
          ++diff_count[(a.log + L - b.log) % L];
      }
      std::int64_t bad_d = -1;
      if (both_zero >= 2) {
        bad_d = 0;  // every scalar pair agrees on the shared zeros
      } else {
        for (std::uint32_t d = 0; d < L; ++d) {
          if (diff_count[d] + both_zero >= 2) {
            bad_d = d;
            break;
          }
        }
      }
      if (bad_d < 0) continue;

      RdCounterexample ce;
      ce.row1 = r1;
      ce.row2 = r2;
      ce.scalar1 = 0;
      ce.scalar2 = (both_zero >= 2) ? 0 : static_cast<std::uint32_t>(bad_d);
      for (std::size_t t = 0; t < width; ++t) {
        const FieldElem a = w.at(r1, t), b = w.at(r2, t);
        const bool agree =
            (a.is_zero() && b.is_zero()) ||
            (!a.is_zero() && !b.is_zero() &&
             (a.log + L - b.log) % L == ce.scalar2);
        if (agree) ce.positions.push_back(t);
      }
      return {false, std::move(ce)};
    }
  }
  return {true, std::nullopt};
}

namespace {

bool rows_differ_everywhere(const BaseMatrix& w, std::size_t r1, std::size_t r2,
                            std::size_t col0, std::size_t ncols) {
  for (std::size_t t = 0; t < ncols; ++t)
    if (w.at(r1, col0 + t) == w.at(r2, col0 + t)) return false;
  return true;
}

}  // namespace

StructuralReport verify_structural_properties(const BaseMatrix& w) {
  if (w.kind() == BaseKind::kPlain)
    throw std::invalid_argument("structural properties apply to block-built matrices");
  const Field& f = w.field();
  const std::uint32_t c = w.block_c();
  const std::uint32_t n = w.block_n();
  const std::uint32_t nblocks = (w.kind() == BaseKind::kFull) ? c : 1;
  const FieldElem beta = f.alpha_pow(c);

  StructuralReport rep;
  rep.row_shift = true;
  rep.col_shift = true;
  rep.distinct_in_line = true;
  rep.lines_differ_everywhere = true;
  rep.offdiag_blocks_nonzero = true;
  rep.diag_blocks_zero_diagonal = true;

  std::vector<char> seen(f.q(), 0);
  for (std::uint32_t bi = 0; bi < nblocks; ++bi) {
    for (std::uint32_t bj = 0; bj < nblocks; ++bj) {
      const std::size_t r0 = static_cast<std::size_t>(bi) * n;
      const std::size_t c0 = static_cast<std::size_t>(bj) * n;
      const std::uint32_t d =
          (w.kind() == BaseKind::kFull) ? (bj + c - bi) % c : w.delta_shift();

      // Properties 1 and 2: the row and column shift relations both reduce
      // to entry(k, l) = beta * entry(k-1, l-1) with cyclic wraparound.
      for (std::uint32_t k = 0; k < n && rep.row_shift; ++k) {
        for (std::uint32_t l = 0; l < n; ++l) {
          const FieldElem prev = w.at(r0 + (k + n - 1) % n, c0 + (l + n - 1) % n);
          if (!(w.at(r0 + k, c0 + l) == f.mul(beta, prev))) {
            rep.row_shift = rep.col_shift = false;
            break;
          }
        }
      }

      // Property 3: all entries in a row (column) of a block are distinct.
      for (std::uint32_t k = 0; k < n && rep.distinct_in_line; ++k) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint32_t l = 0; l < n; ++l) {
          char& s = seen[w.at(r0 + k, c0 + l).log + 1];
          if (s) {
            rep.distinct_in_line = false;
            break;
          }
          s = 1;
        }
      }
      for (std::uint32_t l = 0; l < n && rep.distinct_in_line; ++l) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint32_t k = 0; k < n; ++k) {
          char& s = seen[w.at(r0 + k, c0 + l).log + 1];
          if (s) {
            rep.distinct_in_line = false;
            break;
          }
          s = 1;
        }
      }

      // Property 4 within the block, rows and columns.
      for (std::uint32_t k1 = 0; k1 + 1 < n && rep.lines_differ_everywhere; ++k1)
        for (std::uint32_t k2 = k1 + 1; k2 < n; ++k2)
          if (!rows_differ_everywhere(w, r0 + k1, r0 + k2, c0, n)) {
            rep.lines_differ_everywhere = false;
            break;
          }
      for (std::uint32_t l1 = 0; l1 + 1 < n && rep.lines_differ_everywhere; ++l1) {
        for (std::uint32_t l2 = l1 + 1; l2 < n; ++l2) {
          bool differ = true;
          for (std::uint32_t k = 0; k < n; ++k)
            if (w.at(r0 + k, c0 + l1) == w.at(r0 + k, c0 + l2)) {
              differ = false;
              break;
            }
          if (!differ) {
            rep.lines_differ_everywhere = false;
            break;
          }
        }
      }

      // Properties 5 and 6: zero pattern per block.
      for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t l = 0; l < n; ++l) {
          const bool zero = w.at(r0 + k, c0 + l).is_zero();
          if (d != 0 && zero) rep.offdiag_blocks_nonzero = false;
          if (d == 0 && zero != (k == l)) rep.diag_blocks_zero_diagonal = false;
        }
      }
    }
  }

  // Property 4 across full-matrix rows. Full-matrix columns are excluded:
  // two columns from different block columns can agree in one position.
  if (w.kind() == BaseKind::kFull && rep.lines_differ_everywhere) {
    for (std::size_t r1 = 0; r1 + 1 < w.rows() && rep.lines_differ_everywhere; ++r1)
      for (std::size_t r2 = r1 + 1; r2 < w.rows(); ++r2)
        if (!rows_differ_everywhere(w, r1, r2, 0, w.cols())) {
          rep.lines_differ_everywhere = false;
          break;
        }
  }
  return rep;
}

}  // namespace qc
