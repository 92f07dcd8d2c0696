#include <doctest.h>

#include <random>
#include <sstream>

#include "qc/analysis.hpp"
#include "qc/io.hpp"

using namespace qc;

namespace {

std::string grid_text(const CpmArray& h) {
  std::ostringstream os;
  write_grid(os, h);
  return os.str();
}

}  // namespace

TEST_CASE("grid files round trip bit-exactly") {
  std::mt19937 rng(12);
  for (int t = 0; t < 10; ++t) {
    const std::uint32_t L = 2 + rng() % 20;
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
    std::vector<std::int32_t> g;
    for (std::size_t i = 0; i < rows * cols; ++i)
      g.push_back(rng() % 4 == 0 ? CpmArray::kZm : static_cast<std::int32_t>(rng() % L));
    const CpmArray h(L, rows, cols, std::move(g));
    const std::string text = grid_text(h);
    std::istringstream is(text);
    const CpmArray back = read_grid(is);
    CHECK(back.block_size() == L);
    CHECK(back.grid() == h.grid());
    CHECK(grid_text(back) == text);
  }
}

TEST_CASE("grid header and entries are validated") {
  std::istringstream bad1("0 1 1\n0\n");
  CHECK_THROWS_AS(read_grid(bad1), IoError);
  std::istringstream bad2("5 1 2\n0\n");  // truncated
  CHECK_THROWS_AS(read_grid(bad2), IoError);
  std::istringstream bad3("5 1 1\n7\n");  // exponent >= L
  CHECK_THROWS_AS(read_grid(bad3), IoError);
}

TEST_CASE("base matrix export carries the q c n header and exact logs") {
  auto f = build_field(16);
  const BaseMatrix w = build_full(f, 3, 5);
  std::ostringstream os;
  write_base_matrix(os, w);
  std::istringstream is(os.str());
  const BaseMatrix back = read_base_matrix(is);
  CHECK(back.field().q() == 16);
  CHECK(back.block_c() == 3);
  CHECK(back.block_n() == 5);
  CHECK(back.kind() == BaseKind::kFull);
  CHECK(back.entries() == w.entries());

  std::ostringstream os2;
  write_base_matrix(os2, back);
  CHECK(os2.str() == os.str());

  // header line is "q c n rows cols"
  CHECK(os.str().substr(0, os.str().find('\n')) == "16 3 5 15 15");
}

TEST_CASE("alist of the identity CPM") {
  const BinaryMatrix id = expand(CpmArray(3, 1, 1, {0}));
  std::ostringstream os;
  write_alist(os, id);
  CHECK(os.str() ==
        "3 3\n"
        "1 1\n"
        "1 1 1\n"
        "1 1 1\n"
        "1\n"
        "2\n"
        "3\n"
        "1\n"
        "2\n"
        "3\n");
}

TEST_CASE("alist round trips arbitrary grids") {
  std::mt19937 rng(77);
  for (int t = 0; t < 8; ++t) {
    const std::uint32_t L = 2 + rng() % 12;
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    std::vector<std::int32_t> g;
    for (std::size_t i = 0; i < rows * cols; ++i)
      g.push_back(rng() % 5 == 0 ? CpmArray::kZm : static_cast<std::int32_t>(rng() % L));
    const BinaryMatrix m = expand(CpmArray(L, rows, cols, std::move(g)));

    std::ostringstream os;
    write_alist(os, m);
    std::istringstream is(os.str());
    const BinaryMatrix back = read_alist(is);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto a = m.row(r);
      auto b = back.row(r);
      CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }

    std::ostringstream os2;
    write_alist(os2, back);
    CHECK(os2.str() == os.str());
  }
}

TEST_CASE("malformed alist files are rejected") {
  // declared column weight does not match the indices
  std::istringstream bad1("2 2\n1 1\n1 2\n1 1\n1\n1\n1\n2\n");
  CHECK_THROWS_AS(read_alist(bad1), IoError);
  // row index out of range
  std::istringstream bad2("1 1\n1 1\n1\n1\n2\n1\n");
  CHECK_THROWS_AS(read_alist(bad2), IoError);
  // column list inconsistent with row list
  std::istringstream bad3("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n");
  CHECK_THROWS_AS(read_alist(bad3), IoError);
}

TEST_CASE("simulation CSV has the documented header and one row per point") {
  SimReport rep;
  rep.n = 10;
  rep.k = 5;
  SimPoint p1;
  p1.ebno_db = 1.5;
  p1.frames = 100;
  p1.stats.push_back({50, 20, 4, 300, 0.02, 0.04, 3.0});
  rep.points.push_back(p1);
  SimPoint p2 = p1;
  p2.ebno_db = 2.0;
  rep.points.push_back(p2);

  std::ostringstream os;
  write_sim_csv(os, rep);
  CHECK(os.str() ==
        "ebno_db,frames,bit_errors,frame_errors,ber,bler,avg_iters\n"
        "1.5,100,20,4,0.02,0.04,3\n"
        "2,100,20,4,0.02,0.04,3\n");
}

TEST_CASE("CSV gains an iters column when several caps are reported") {
  SimReport rep;
  SimPoint p;
  p.ebno_db = 3.0;
  p.frames = 10;
  p.stats.push_back({5, 8, 2, 40, 0.08, 0.2, 4.0});
  p.stats.push_back({50, 4, 1, 80, 0.04, 0.1, 8.0});
  rep.points.push_back(p);
  std::ostringstream os;
  write_sim_csv(os, rep);
  CHECK(os.str() ==
        "ebno_db,iters,frames,bit_errors,frame_errors,ber,bler,avg_iters\n"
        "3,5,10,8,2,0.08,0.2,4\n"
        "3,50,10,4,1,0.04,0.1,8\n");
}

TEST_CASE("missing files raise IoError") {
  CHECK_THROWS_AS(load_grid("/nonexistent/grid.txt"), IoError);
  CHECK_THROWS_AS(load_alist("/nonexistent/code.alist"), IoError);
  CHECK_THROWS_AS(load_base_matrix("/nonexistent/w.txt"), IoError);
}
