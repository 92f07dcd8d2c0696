#include "qc/dispersion.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qc {

CpmArray::CpmArray(std::uint32_t block_size, std::size_t rows, std::size_t cols,
                   std::vector<std::int32_t> grid, std::uint32_t q)
    : block_size_(block_size), rows_(rows), cols_(cols), grid_(std::move(grid)), q_(q) {
  if (block_size_ < 1) throw std::invalid_argument("block size must be positive");
  if (rows_ == 0 || cols_ == 0 || grid_.size() != rows_ * cols_)
    throw std::invalid_argument("grid size does not match dimensions");
  for (std::int32_t e : grid_)
    if (e != kZm && (e < 0 || e >= static_cast<std::int32_t>(block_size_)))
      throw std::invalid_argument("CPM exponent out of range");
}

std::size_t CpmArray::zm_count() const {
  std::size_t n = 0;
  for (std::int32_t e : grid_) n += (e == kZm);
  return n;
}

std::vector<std::uint32_t> CpmArray::row_block_weights() const {
  std::vector<std::uint32_t> w(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) w[r] += !is_zm(r, c);
  return w;
}

std::vector<std::uint32_t> CpmArray::col_block_weights() const {
  std::vector<std::uint32_t> w(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) w[c] += !is_zm(r, c);
  return w;
}

void CpmArray::set_source(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols) {
  src_rows_ = std::move(rows);
  src_cols_ = std::move(cols);
}

CpmArray disperse(const BaseMatrix& w) {
  const std::uint32_t q = w.field().q();
  std::vector<std::int32_t> grid;
  grid.reserve(w.rows() * w.cols());
  for (const FieldElem& e : w.entries())
    grid.push_back(e.is_zero() ? CpmArray::kZm : e.log);
  return CpmArray(q - 1, w.rows(), w.cols(), std::move(grid), q);
}

namespace {

void check_selection(const std::vector<std::uint32_t>& idx, std::size_t limit,
                     const char* what) {
  std::vector<char> seen(limit, 0);
  for (std::uint32_t i : idx) {
    if (i >= limit) throw std::invalid_argument(std::string(what) + " index out of range");
    if (seen[i]) throw std::invalid_argument(std::string(what) + " indices must be distinct");
    seen[i] = 1;
  }
  if (idx.empty()) throw std::invalid_argument(std::string(what) + " selection is empty");
}

std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& base,
                                   const std::vector<std::uint32_t>& sel) {
  if (base.empty()) return sel;
  std::vector<std::uint32_t> out;
  out.reserve(sel.size());
  for (std::uint32_t i : sel) out.push_back(base[i]);
  return out;
}

}  // namespace

CpmArray subarray(const CpmArray& h, const std::vector<std::uint32_t>& row_blocks,
                  const std::vector<std::uint32_t>& col_blocks) {
  check_selection(row_blocks, h.rows(), "row block");
  check_selection(col_blocks, h.cols(), "column block");
  std::vector<std::int32_t> grid;
  grid.reserve(row_blocks.size() * col_blocks.size());
  for (std::uint32_t r : row_blocks)
    for (std::uint32_t c : col_blocks) grid.push_back(h.at(r, c));
  CpmArray out(h.block_size(), row_blocks.size(), col_blocks.size(), std::move(grid), h.q());
  out.set_source(compose(h.source_rows(), row_blocks), compose(h.source_cols(), col_blocks));
  return out;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
select_zm_free(const CpmArray& h, std::uint32_t gamma, std::uint32_t rho) {
  if (gamma < 1 || gamma > h.rows()) throw std::invalid_argument("gamma out of range");
  if (rho < 1 || rho > h.cols()) throw std::invalid_argument("rho out of range");
  std::vector<std::uint32_t> rows(gamma), cols(rho);
  for (std::uint32_t i = 0; i < gamma; ++i) rows[i] = i;
  for (std::uint32_t t = 0; t < rho; ++t)
    cols[t] = static_cast<std::uint32_t>((gamma + t) % h.cols());
  for (std::uint32_t r : rows)
    for (std::uint32_t c : cols)
      if (h.is_zm(r, c))
        throw std::invalid_argument("no ZM-free selection under this rule: ZM at block (" +
                                    std::to_string(r) + ", " + std::to_string(c) + ")");
  return {std::move(rows), std::move(cols)};
}

namespace {

WeightHist weights_to_hist(const std::vector<std::uint32_t>& w) {
  WeightHist h;
  for (std::uint32_t x : w) ++h[x];
  return h;
}

}  // namespace

MaskMatrix::MaskMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits,
                       WeightHist col_hist, WeightHist row_hist)
    : rows_(rows),
      cols_(cols),
      bits_(std::move(bits)),
      col_hist_(std::move(col_hist)),
      row_hist_(std::move(row_hist)) {
  if (rows_ == 0 || cols_ == 0 || bits_.size() != rows_ * cols_)
    throw std::invalid_argument("mask size does not match dimensions");
  for (std::uint8_t b : bits_)
    if (b > 1) throw std::invalid_argument("mask entries must be 0 or 1");
  std::vector<std::uint32_t> cw(cols_, 0), rw(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (bits_[r * cols_ + c]) {
        ++cw[c];
        ++rw[r];
      }
  if (weights_to_hist(cw) != col_hist_ || weights_to_hist(rw) != row_hist_)
    throw std::invalid_argument("mask weights do not match the declared histograms");
}

MaskMatrix MaskMatrix::from_bits(std::size_t rows, std::size_t cols,
                                 std::vector<std::uint8_t> bits) {
  if (bits.size() != rows * cols) throw std::invalid_argument("mask size mismatch");
  std::vector<std::uint32_t> cw(cols, 0), rw(rows, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (bits[r * cols + c]) {
        ++cw[c];
        ++rw[r];
      }
  return MaskMatrix(rows, cols, std::move(bits), weights_to_hist(cw), weights_to_hist(rw));
}

MaskMatrix MaskMatrix::all_ones(std::size_t rows, std::size_t cols) {
  return from_bits(rows, cols, std::vector<std::uint8_t>(rows * cols, 1));
}

CpmArray mask(const CpmArray& h, const MaskMatrix& z) {
  if (z.rows() != h.rows() || z.cols() != h.cols())
    throw std::invalid_argument("mask dimensions must match the grid");
  std::vector<std::int32_t> grid;
  grid.reserve(h.rows() * h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      grid.push_back(z.at(r, c) ? h.at(r, c) : CpmArray::kZm);
  CpmArray out(h.block_size(), h.rows(), h.cols(), std::move(grid), h.q());
  out.set_source(h.source_rows(), h.source_cols());
  return out;
}

namespace {

std::vector<std::uint32_t> hist_to_degrees(const WeightHist& hist, std::size_t count,
                                           std::uint32_t max_degree, const char* what) {
  std::vector<std::uint32_t> deg;
  std::size_t total = 0;
  for (const auto& [w, cnt] : hist) {
    if (w > max_degree)
      throw std::invalid_argument(std::string(what) + " weight exceeds the other dimension");
    total += cnt;
    for (std::uint32_t i = 0; i < cnt; ++i) deg.push_back(w);
  }
  if (total != count)
    throw std::invalid_argument(std::string(what) + " histogram must cover all " +
                                std::to_string(count) + " lines");
  return deg;
}

// Gale-Ryser feasibility for bipartite degree sequences.
bool bipartite_realizable(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
  std::sort(a.begin(), a.end(), std::greater<>());
  std::uint64_t lhs = 0;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    lhs += a[k - 1];
    std::uint64_t rhs = 0;
    for (std::uint32_t d : b) rhs += std::min<std::uint64_t>(d, k);
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace

MaskMatrix build_mask_random(std::uint32_t gamma, std::uint32_t rho,
                             const WeightHist& col_hist, const WeightHist& row_hist,
                             std::uint64_t seed) {
  if (gamma < 1 || rho < 1) throw std::invalid_argument("mask dimensions must be positive");
  std::vector<std::uint32_t> col_deg = hist_to_degrees(col_hist, rho, gamma, "column");
  std::vector<std::uint32_t> row_deg = hist_to_degrees(row_hist, gamma, rho, "row");
  std::uint64_t col_sum = 0, row_sum = 0;
  for (std::uint32_t d : col_deg) col_sum += d;
  for (std::uint32_t d : row_deg) row_sum += d;
  if (col_sum != row_sum)
    throw std::invalid_argument("column and row weight totals differ (" +
                                std::to_string(col_sum) + " vs " + std::to_string(row_sum) + ")");
  if (!bipartite_realizable(col_deg, row_deg))
    throw std::invalid_argument("degree pair has no bipartite realization");

  std::mt19937_64 rng(seed);
  std::shuffle(col_deg.begin(), col_deg.end(), rng);
  std::shuffle(row_deg.begin(), row_deg.end(), rng);

  std::vector<std::uint32_t> col_stubs, row_stubs;
  col_stubs.reserve(col_sum);
  row_stubs.reserve(row_sum);
  for (std::uint32_t c = 0; c < rho; ++c)
    for (std::uint32_t i = 0; i < col_deg[c]; ++i) col_stubs.push_back(c);
  for (std::uint32_t r = 0; r < gamma; ++r)
    for (std::uint32_t i = 0; i < row_deg[r]; ++i) row_stubs.push_back(r);

  const auto key = [rho](std::uint32_t r, std::uint32_t c) {
    return static_cast<std::uint64_t>(r) * rho + c;
  };

  constexpr int kMaxPasses = 200;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::shuffle(row_stubs.begin(), row_stubs.end(), rng);
    // edges[i] = (row_stubs[i], col_stubs[i]); repair duplicates by swaps
    const std::size_t ne = col_stubs.size();
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    count.reserve(ne * 2);
    for (std::size_t i = 0; i < ne; ++i) ++count[key(row_stubs[i], col_stubs[i])];

    std::uniform_int_distribution<std::size_t> pick(0, ne ? ne - 1 : 0);
    bool stuck = false;
    for (std::size_t i = 0; i < ne && !stuck; ++i) {
      std::size_t attempts = 0;
      while (count[key(row_stubs[i], col_stubs[i])] > 1) {
        if (++attempts > 50 * ne) {
          stuck = true;
          break;
        }
        const std::size_t j = pick(rng);
        const std::uint32_t r1 = row_stubs[i], c1 = col_stubs[i];
        const std::uint32_t r2 = row_stubs[j], c2 = col_stubs[j];
        if (r1 == r2 || c1 == c2) continue;
        if (count.count(key(r1, c2)) && count[key(r1, c2)] > 0) continue;
        if (count.count(key(r2, c1)) && count[key(r2, c1)] > 0) continue;
        --count[key(r1, c1)];
        --count[key(r2, c2)];
        ++count[key(r1, c2)];
        ++count[key(r2, c1)];
        std::swap(col_stubs[i], col_stubs[j]);
      }
    }
    if (stuck) continue;

    bool simple = true;
    for (const auto& [k, v] : count)
      if (v > 1) {
        simple = false;
        break;
      }
    if (!simple) continue;

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(gamma) * rho, 0);
    for (std::size_t i = 0; i < ne; ++i)
      bits[static_cast<std::size_t>(row_stubs[i]) * rho + col_stubs[i]] = 1;
    return MaskMatrix(gamma, rho, std::move(bits), col_hist, row_hist);
  }
  throw std::runtime_error("mask repair failed after bounded retries");
}

BinaryMatrix expand(const CpmArray& h) {
  const std::uint32_t L = h.block_size();
  BinaryMatrix m(h.rows() * L, h.cols() * L);
  for (std::size_t I = 0; I < h.rows(); ++I) {
    for (std::uint32_t r = 0; r < L; ++r) {
      const std::size_t row = I * L + r;
      for (std::size_t J = 0; J < h.cols(); ++J) {
        const std::int32_t e = h.at(I, J);
        if (e == CpmArray::kZm) continue;
        m.push(row, static_cast<std::uint32_t>(J * L + (r + e) % L));
      }
    }
  }
  return m;
}

}  // namespace qc
