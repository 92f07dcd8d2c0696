#include "qc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qc {

namespace {

template <typename T>
T next_int(std::istream& is, const char* what) {
  T v;
  if (!(is >> v)) throw IoError(std::string("malformed file: expected ") + what);
  return v;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

void write_base_matrix(std::ostream& os, const BaseMatrix& w) {
  os << w.field().q() << ' ' << w.block_c() << ' ' << w.block_n() << ' ' << w.rows() << ' '
     << w.cols() << '\n';
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (c) os << ' ';
      os << w.at(r, c).log;
    }
    os << '\n';
  }
}

BaseMatrix read_base_matrix(std::istream& is) {
  const auto q = next_int<std::uint32_t>(is, "q");
  const auto c = next_int<std::uint32_t>(is, "c");
  const auto n = next_int<std::uint32_t>(is, "n");
  const auto rows = next_int<std::size_t>(is, "rows");
  const auto cols = next_int<std::size_t>(is, "cols");
  std::shared_ptr<const Field> field;
  try {
    field = build_field(q);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("bad field size in header: ") + e.what());
  }
  if (rows == 0 || cols == 0) throw IoError("empty matrix");
  std::vector<FieldElem> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const auto log = next_int<std::int32_t>(is, "entry");
    if (log < -1 || log >= static_cast<std::int32_t>(q - 1))
      throw IoError("entry exponent out of range");
    entries.push_back({log, q});
  }
  BaseKind kind = BaseKind::kPlain;
  if (c >= 1 && n >= 1 && static_cast<std::uint64_t>(c) * n == q - 1 &&
      std::gcd(c, n) == 1 && rows == q - 1 && cols == q - 1)
    kind = BaseKind::kFull;
  return BaseMatrix(std::move(field), rows, cols, std::move(entries), kind, c, n);
}

void write_grid(std::ostream& os, const CpmArray& h) {
  os << h.block_size() << ' ' << h.rows() << ' ' << h.cols() << '\n';
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (c) os << ' ';
      os << h.at(r, c);
    }
    os << '\n';
  }
}

CpmArray read_grid(std::istream& is) {
  const auto L = next_int<std::uint32_t>(is, "L");
  const auto rows = next_int<std::size_t>(is, "rows");
  const auto cols = next_int<std::size_t>(is, "cols");
  if (L < 1 || rows == 0 || cols == 0) throw IoError("bad grid header");
  std::vector<std::int32_t> grid;
  grid.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const auto e = next_int<std::int32_t>(is, "exponent");
    if (e < -1 || e >= static_cast<std::int32_t>(L)) throw IoError("exponent out of range");
    grid.push_back(e);
  }
  return CpmArray(L, rows, cols, std::move(grid), L + 1);
}

void write_alist(std::ostream& os, const BinaryMatrix& m) {
  const std::size_t N = m.cols();
  const std::size_t M = m.rows();
  const auto cw = m.col_weights();
  const auto rw = m.row_weights();
  const std::uint32_t max_cw = cw.empty() ? 0 : *std::max_element(cw.begin(), cw.end());
  const std::uint32_t max_rw = rw.empty() ? 0 : *std::max_element(rw.begin(), rw.end());

  os << N << ' ' << M << '\n';
  os << max_cw << ' ' << max_rw << '\n';
  for (std::size_t c = 0; c < N; ++c) os << cw[c] << (c + 1 < N ? ' ' : '\n');
  for (std::size_t r = 0; r < M; ++r) os << rw[r] << (r + 1 < M ? ' ' : '\n');

  std::vector<std::vector<std::uint32_t>> cols(N);
  for (std::size_t r = 0; r < M; ++r)
    for (std::uint32_t c : m.row(r)) cols[c].push_back(static_cast<std::uint32_t>(r));
  for (std::size_t c = 0; c < N; ++c) {
    for (std::uint32_t i = 0; i < max_cw; ++i) {
      if (i) os << ' ';
      os << (i < cols[c].size() ? cols[c][i] + 1 : 0);
    }
    os << '\n';
  }
  for (std::size_t r = 0; r < M; ++r) {
    auto row = m.row(r);
    for (std::uint32_t i = 0; i < max_rw; ++i) {
      if (i) os << ' ';
      os << (i < row.size() ? row[i] + 1 : 0);
    }
    os << '\n';
  }
}

BinaryMatrix read_alist(std::istream& is) {
  const auto N = next_int<std::size_t>(is, "N");
  const auto M = next_int<std::size_t>(is, "M");
  const auto max_cw = next_int<std::uint32_t>(is, "max column weight");
  const auto max_rw = next_int<std::uint32_t>(is, "max row weight");
  std::vector<std::uint32_t> cw(N), rw(M);
  for (auto& w : cw) w = next_int<std::uint32_t>(is, "column weight");
  for (auto& w : rw) w = next_int<std::uint32_t>(is, "row weight");

  std::vector<std::vector<std::uint32_t>> cols(N);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::uint32_t i = 0; i < max_cw; ++i) {
      const auto r = next_int<std::uint32_t>(is, "row index");
      if (r == 0) continue;  // padding
      if (r > M) throw IoError("row index out of range");
      cols[c].push_back(r - 1);
    }
    if (cols[c].size() != cw[c]) throw IoError("column weight mismatch");
  }

  std::vector<std::vector<std::uint32_t>> rows(M);
  for (std::size_t r = 0; r < M; ++r) {
    for (std::uint32_t i = 0; i < max_rw; ++i) {
      const auto c = next_int<std::uint32_t>(is, "column index");
      if (c == 0) continue;
      if (c > N) throw IoError("column index out of range");
      rows[r].push_back(c - 1);
    }
    if (rows[r].size() != rw[r]) throw IoError("row weight mismatch");
    std::sort(rows[r].begin(), rows[r].end());
    for (std::size_t i = 1; i < rows[r].size(); ++i)
      if (rows[r][i] == rows[r][i - 1]) throw IoError("duplicate entry in row");
  }

  BinaryMatrix m = BinaryMatrix::from_rows(M, N, std::move(rows));
  // cross-check the column lists against the row lists
  std::vector<std::vector<std::uint32_t>> check(N);
  for (std::size_t r = 0; r < M; ++r)
    for (std::uint32_t c : m.row(r)) check[c].push_back(static_cast<std::uint32_t>(r));
  for (std::size_t c = 0; c < N; ++c) {
    auto sorted = cols[c];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != check[c]) throw IoError("column lists disagree with row lists");
  }
  return m;
}

void write_sim_csv(std::ostream& os, const SimReport& report) {
  const bool multi = !report.points.empty() && report.points.front().stats.size() > 1;
  if (multi)
    os << "ebno_db,iters,frames,bit_errors,frame_errors,ber,bler,avg_iters\n";
  else
    os << "ebno_db,frames,bit_errors,frame_errors,ber,bler,avg_iters\n";
  for (const SimPoint& pt : report.points) {
    for (const IterStats& st : pt.stats) {
      os << fmt_double(pt.ebno_db) << ',';
      if (multi) os << st.iter_cap << ',';
      os << pt.frames << ',' << st.bit_errors << ',' << st.frame_errors << ','
         << fmt_double(st.ber) << ',' << fmt_double(st.bler) << ','
         << fmt_double(st.avg_iters) << '\n';
    }
  }
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

}  // namespace

void save_grid(const std::string& path, const CpmArray& h) {
  auto f = open_out(path);
  write_grid(f, h);
  if (!f) throw IoError("write failed: " + path);
}

CpmArray load_grid(const std::string& path) {
  auto f = open_in(path);
  return read_grid(f);
}

void save_base_matrix(const std::string& path, const BaseMatrix& w) {
  auto f = open_out(path);
  write_base_matrix(f, w);
  if (!f) throw IoError("write failed: " + path);
}

BaseMatrix load_base_matrix(const std::string& path) {
  auto f = open_in(path);
  return read_base_matrix(f);
}

void save_alist(const std::string& path, const BinaryMatrix& m) {
  auto f = open_out(path);
  write_alist(f, m);
  if (!f) throw IoError("write failed: " + path);
}

BinaryMatrix load_alist(const std::string& path) {
  auto f = open_in(path);
  return read_alist(f);
}

void save_sim_csv(const std::string& path, const SimReport& report) {
  auto f = open_out(path);
  write_sim_csv(f, report);
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace qc
