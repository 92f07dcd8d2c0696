#include "qc/analysis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qc {

RcVerdict rc_check(const BinaryMatrix& hb) {
  const PackedMatrix p = PackedMatrix::from(hb);
  const std::size_t words = p.words_per_row();
  for (std::size_t r1 = 0; r1 + 1 < p.rows(); ++r1) {
    auto a = p.row(r1);
    for (std::size_t r2 = r1 + 1; r2 < p.rows(); ++r2) {
      auto b = p.row(r2);
      std::size_t shared = 0;
      for (std::size_t w = 0; w < words && shared < 2; ++w)
        shared += std::popcount(a[w] & b[w]);
      if (shared < 2) continue;
      RcViolation v;
      v.row1 = r1;
      v.row2 = r2;
      int found = 0;
      for (std::size_t w = 0; w < words && found < 2; ++w) {
        std::uint64_t x = a[w] & b[w];
        while (x && found < 2) {
          const std::uint32_t bit = static_cast<std::uint32_t>(std::countr_zero(x));
          x &= x - 1;
          if (found == 0)
            v.pos1 = static_cast<std::uint32_t>(w * 64 + bit);
          else
            v.pos2 = static_cast<std::uint32_t>(w * 64 + bit);
          ++found;
        }
      }
      return {false, v};
    }
  }
  return {true, std::nullopt};
}

GirthReport girth(const BinaryMatrix& hb) {
  const std::size_t n = hb.cols();
  const std::size_t m = hb.rows();
  const std::size_t total = n + m;

  // adjacency over the combined node set: vars 0..n-1, checks n..n+m-1
  std::vector<std::vector<std::uint32_t>> adj(total);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::uint32_t c : hb.row(r)) {
      adj[c].push_back(static_cast<std::uint32_t>(n + r));
      adj[n + r].push_back(c);
    }
  }

  std::uint32_t best = 0;
  bool found = false;
  std::vector<std::uint32_t> witness;

  std::vector<std::uint32_t> dist(total), parent(total), stamp(total, 0), queue(total);
  std::uint32_t run = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (adj[root].size() < 2) continue;  // no cycle through a degree-<2 node
    ++run;
    std::size_t qh = 0, qt = 0;
    queue[qt++] = static_cast<std::uint32_t>(root);
    stamp[root] = run;
    dist[root] = 0;
    parent[root] = static_cast<std::uint32_t>(root);
    while (qh < qt) {
      const std::uint32_t u = queue[qh++];
      if (found && dist[u] * 2 >= best) continue;  // cannot improve
      for (std::uint32_t w : adj[u]) {
        if (stamp[w] != run) {
          stamp[w] = run;
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue[qt++] = w;
          continue;
        }
        if (w == parent[u]) continue;
        const std::uint32_t len = dist[u] + dist[w] + 1;
        if (!found || len < best) {
          found = true;
          best = len;
          witness.clear();
          std::vector<std::uint32_t> up;
          for (std::uint32_t x = u;; x = parent[x]) {
            up.push_back(x);
            if (x == root) break;
          }
          std::reverse(up.begin(), up.end());
          witness = std::move(up);
          for (std::uint32_t x = w; x != root; x = parent[x]) witness.push_back(x);
        }
      }
    }
    if (found && best == 4) break;  // bipartite minimum
  }

  GirthReport rep;
  if (!found) {
    rep.unbounded = true;
    return rep;
  }
  rep.girth = best;
  rep.witness = std::move(witness);
  return rep;
}

CpmCycleVerdict cpm_four_cycle_check(const CpmArray& h) {
  const std::int64_t L = h.block_size();
  for (std::size_t i1 = 0; i1 + 1 < h.rows(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < h.rows(); ++i2) {
      for (std::size_t j1 = 0; j1 + 1 < h.cols(); ++j1) {
        if (h.is_zm(i1, j1) || h.is_zm(i2, j1)) continue;
        for (std::size_t j2 = j1 + 1; j2 < h.cols(); ++j2) {
          if (h.is_zm(i1, j2) || h.is_zm(i2, j2)) continue;
          const std::int64_t s =
              h.at(i1, j1) - h.at(i1, j2) + h.at(i2, j2) - h.at(i2, j1);
          if (((s % L) + L) % L == 0)
            return {false,
                    std::array<std::uint32_t, 4>{
                        static_cast<std::uint32_t>(i1), static_cast<std::uint32_t>(i2),
                        static_cast<std::uint32_t>(j1), static_cast<std::uint32_t>(j2)}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

RankReport rank_gf2(const BinaryMatrix& hb) {
  const Rref r = rref_gf2(hb);
  RankReport rep;
  rep.rank = r.pivot_cols.size();
  rep.method = RankMethod::kEliminationGf2;
  rep.redundant_rows = hb.rows() - rep.rank;
  return rep;
}

PackedMatrix null_space_basis(const BinaryMatrix& hb) {
  const Rref r = rref_gf2(hb);
  const std::size_t n = hb.cols();
  const std::size_t rank = r.pivot_cols.size();
  std::vector<char> is_pivot(n, 0);
  for (std::uint32_t c : r.pivot_cols) is_pivot[c] = 1;

  PackedMatrix basis(n - rank, n);
  std::size_t b = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis.set(b, f);
    for (std::size_t i = 0; i < rank; ++i)
      if (r.mat.get(i, f)) basis.set(b, r.pivot_cols[i]);
    ++b;
  }
  return basis;
}

bool in_null_space(const BinaryMatrix& hb, std::span<const std::uint64_t> v) {
  for (std::size_t r = 0; r < hb.rows(); ++r) {
    std::uint32_t parity = 0;
    for (std::uint32_t c : hb.row(r)) parity ^= (v[c >> 6] >> (c & 63)) & 1u;
    if (parity) return false;
  }
  return true;
}

BaseMatrix hadamard_power(const BaseMatrix& g, std::uint32_t l) {
  if (l < 1) throw std::invalid_argument("Hadamard power needs l >= 1");
  const Field& f = g.field();
  const std::uint32_t L = f.q() - 1;
  std::vector<FieldElem> entries;
  entries.reserve(g.entries().size());
  for (const FieldElem& e : g.entries()) {
    if (e.is_zero())
      entries.push_back(e);
    else
      entries.push_back(
          {static_cast<std::int32_t>((static_cast<std::uint64_t>(e.log) * l) % L), e.q});
  }
  return BaseMatrix(g.field_ptr(), g.rows(), g.cols(), std::move(entries));
}

RankReport rank_gfq(const BaseMatrix& g) {
  const Field& f = g.field();
  std::vector<FieldElem> a = g.entries();
  const std::size_t rows = g.rows(), cols = g.cols();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c)
        std::swap(a[rank * cols + c], a[pivot * cols + c]);
    const FieldElem inv = f.inv(a[rank * cols + col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const FieldElem factor = f.mul(a[r * cols + col], inv);
      if (factor.is_zero()) continue;
      for (std::size_t c = col; c < cols; ++c)
        a[r * cols + c] =
            f.sub(a[r * cols + c], f.mul(factor, a[rank * cols + c]));
    }
    ++rank;
  }
  RankReport rep;
  rep.rank = rank;
  rep.method = RankMethod::kEliminationGfq;
  rep.redundant_rows = rows - rank;
  return rep;
}

RankReport rank_via_hadamard(const BaseMatrix& g) {
  if (g.field().characteristic() != 2)
    throw std::invalid_argument("Hadamard rank decomposition needs characteristic 2");
  const std::uint32_t q = g.field().q();
  RankReport rep;
  rep.method = RankMethod::kHadamardSum;
  for (std::uint32_t l = 1; l <= q - 1; ++l) {
    const std::size_t rl = rank_gfq(hadamard_power(g, l)).rank;
    rep.per_l_ranks.emplace_back(l, rl);
    rep.rank += rl;
  }
  rep.redundant_rows = g.rows() * (q - 1) - rep.rank;
  return rep;
}

std::uint64_t lambda_l(std::uint32_t l, std::uint32_t m) {
  if (m < 1 || m > 63) throw std::invalid_argument("m out of range");
  if (l >= (1ull << m)) throw std::invalid_argument("l must be below 2^m");
  return 1ull << std::popcount(l);
}

std::uint64_t theorem4_rank(std::uint32_t m, std::uint32_t gamma, std::uint32_t l) {
  const std::uint64_t q1 = (1ull << m) - 1;
  if (gamma < 1 || gamma > q1) throw std::invalid_argument("gamma out of range");
  if (l < 1 || l > q1) throw std::invalid_argument("l out of range");
  if (l == q1) return std::min<std::uint64_t>(gamma, q1 - 1);
  return std::min<std::uint64_t>(gamma, lambda_l(l, m));
}

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::uint64_t rank_formula(std::uint32_t m, std::uint32_t gamma) {
  if (m < 1 || m > 20) throw std::invalid_argument("m out of range");
  const std::uint64_t q1 = (1ull << m) - 1;
  if (gamma < 1 || gamma > q1) throw std::invalid_argument("gamma out of range");
  if (gamma == q1) {
    std::uint64_t p = 1;
    for (std::uint32_t i = 0; i < m; ++i) p *= 3;
    return p - 3;
  }
  // t_gamma: largest t with 2^t <= gamma; the sum is empty for gamma = 1
  std::uint32_t tg = 0;
  while ((1u << (tg + 1)) <= gamma) ++tg;
  std::uint64_t rank = static_cast<std::uint64_t>(gamma) * q1;
  for (std::uint32_t t = 1; t <= tg; ++t)
    rank -= binom(m, t) * (gamma - (1u << t));
  return rank;
}

}  // namespace qc
