#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qc/base_matrix.hpp"
#include "qc/binary_matrix.hpp"
#include "qc/dispersion.hpp"

namespace qc {

struct RcViolation {
  std::size_t row1 = 0;
  std::size_t row2 = 0;
  std::uint32_t pos1 = 0;
  std::uint32_t pos2 = 0;
};

struct RcVerdict {
  bool holds = false;
  std::optional<RcViolation> violation;
};

/// Row-column constraint: no two rows share more than one 1-position.
/// A row-pair violation is equivalent to a column-pair violation (both name
/// a 2 x 2 all-ones submatrix), so scanning row pairs decides the verdict.
/// Returns the first violating quadruple in (row1, row2, pos1, pos2) order.
RcVerdict rc_check(const BinaryMatrix& hb);

/// Girth of the Tanner graph. Witness nodes: variables are 0..cols-1,
/// checks are cols..cols+rows-1; the sequence lists the cycle once, in order.
struct GirthReport {
  bool unbounded = false;  // acyclic graph
  std::uint32_t girth = 0;
  std::vector<std::uint32_t> witness;
};

GirthReport girth(const BinaryMatrix& hb);

/// Fast 4-cycle screen at the grid level: a quadruple of CPM blocks
/// (i1, i2) x (j1, j2) closes a 4-cycle iff
/// e(i1,j1) - e(i1,j2) + e(i2,j2) - e(i2,j1) = 0 (mod L).
struct CpmCycleVerdict {
  bool holds = false;  // no 4-cycle among CPM blocks
  std::optional<std::array<std::uint32_t, 4>> blocks;  // i1, i2, j1, j2
};

CpmCycleVerdict cpm_four_cycle_check(const CpmArray& h);

enum class RankMethod {
  kEliminationGf2,
  kEliminationGfq,
  kHadamardSum,
  kClosedForm,
};

struct RankReport {
  std::size_t rank = 0;
  RankMethod method = RankMethod::kEliminationGf2;
  std::size_t redundant_rows = 0;  // rows - rank
  std::vector<std::pair<std::uint32_t, std::size_t>> per_l_ranks;  // (l, rank(G^(l)))
};

/// Rank over GF(2) by bit-packed Gaussian elimination.
RankReport rank_gf2(const BinaryMatrix& hb);

/// Basis of the null space as rows of a packed matrix (cols - rank rows).
PackedMatrix null_space_basis(const BinaryMatrix& hb);

/// True iff hb * v = 0 for the packed vector v (words cover hb.cols() bits).
bool in_null_space(const BinaryMatrix& hb, std::span<const std::uint64_t> v);

/// Element-wise l-th power, l >= 1.
BaseMatrix hadamard_power(const BaseMatrix& g, std::uint32_t l);

/// Rank over GF(q) by field elimination.
RankReport rank_gfq(const BaseMatrix& g);

/// Rank of the array dispersion of g over GF(2^m), computed as the sum of
/// the GF(q) ranks of the Hadamard powers g^(1) .. g^(q-1).
RankReport rank_via_hadamard(const BaseMatrix& g);

/// Number of odd entries in row l of Pascal's triangle: 2^w(l) with w(l)
/// the radix-2 weight of l. Requires 0 <= l < 2^m.
std::uint64_t lambda_l(std::uint32_t l, std::uint32_t m);

/// Rank of the l-th Hadamard power of the gamma-row top slice of the
/// characteristic-2 base matrix [alpha^i + alpha^j]:
/// min(gamma, lambda_l) for l < 2^m - 1, min(gamma, 2^m - 2) for l = 2^m - 1.
std::uint64_t theorem4_rank(std::uint32_t m, std::uint32_t gamma, std::uint32_t l);

/// Closed-form GF(2) rank of the dispersion of the first gamma rows of
/// [alpha^i + alpha^j] over GF(2^m):
/// gamma (2^m - 1) - sum_{t=1}^{t_gamma} C(m, t) (gamma - 2^t), and
/// 3^m - 3 for the full array (gamma = 2^m - 1).
std::uint64_t rank_formula(std::uint32_t m, std::uint32_t gamma);

}  // namespace qc
