#include <doctest.h>

#include <numeric>
#include <optional>
#include <set>

#include "qc/base_matrix.hpp"

using namespace qc;

namespace {

// Literal quadruple scan over rows, scalar pairs and positions, the oracle
// for the difference-counting implementation in the library.
std::optional<RdCounterexample> literal_rd_scan(const BaseMatrix& w) {
  const Field& f = w.field();
  const std::uint32_t L = f.q() - 1;
  for (std::size_t r1 = 0; r1 + 1 < w.rows(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < w.rows(); ++r2) {
      for (std::uint32_t e = 0; e < L; ++e) {
        for (std::uint32_t fe = 0; fe < L; ++fe) {
          std::vector<std::size_t> agree;
          for (std::size_t t = 0; t < w.cols(); ++t) {
            const FieldElem a = f.mul(f.alpha_pow(e), w.at(r1, t));
            const FieldElem b = f.mul(f.alpha_pow(fe), w.at(r2, t));
            if (a == b) agree.push_back(t);
          }
          if (agree.size() >= 2) return RdCounterexample{r1, r2, e, fe, agree};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> coprime_factorizations(std::uint32_t q1) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t c = 1; c <= q1; ++c)
    if (q1 % c == 0 && std::gcd(c, q1 / c) == 1) out.emplace_back(c, q1 / c);
  return out;
}

}  // namespace

TEST_CASE("subgroup pair for GF(2^4), c=3, n=5") {
  auto f = build_field(16);
  const SubgroupPair sp = make_subgroup_pair(*f, 3, 5);
  CHECK(sp.beta == f->alpha_pow(3));
  CHECK(sp.delta == f->alpha_pow(5));
  CHECK(f->element_order(sp.beta) == 5);
  CHECK(f->element_order(sp.delta) == 3);
  CHECK(sp.g1.size() == 5);
  CHECK(sp.g2.size() == 3);
  // intersection is the unit element only
  std::set<std::int32_t> s1, common;
  for (const FieldElem& e : sp.g1) s1.insert(e.log);
  for (const FieldElem& e : sp.g2)
    if (s1.count(e.log)) common.insert(e.log);
  CHECK(common == std::set<std::int32_t>{0});
}

TEST_CASE("invalid factorizations are rejected") {
  auto f16 = build_field(16);
  CHECK_THROWS_AS(make_subgroup_pair(*f16, 2, 5), std::invalid_argument);   // 2*5 != 15
  CHECK_THROWS_AS(build_full(f16, 4, 4), std::invalid_argument);
  auto f379 = build_field(379);
  // 378 = 6*63 but gcd(6, 63) = 3: the coprimality hypothesis fails
  CHECK_THROWS_AS(make_subgroup_pair(*f379, 6, 63), std::invalid_argument);
  CHECK_THROWS_AS(build_full(f379, 6, 63), std::invalid_argument);
}

TEST_CASE("block zero patterns: diagonal block vs shifted block") {
  auto f = build_field(16);
  const SubgroupPair sp = make_subgroup_pair(*f, 3, 5);

  const BaseMatrix w00 = build_block(f, sp, 0, 0);
  REQUIRE(w00.rows() == 5);
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t l = 0; l < 5; ++l)
      CHECK(w00.at(k, l).is_zero() == (k == l));

  const BaseMatrix w01 = build_block(f, sp, 0, 1);
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t l = 0; l < 5; ++l)
      CHECK_FALSE(w01.at(k, l).is_zero());

  // delta^{j-i} depends only on j-i
  const BaseMatrix w11 = build_block(f, sp, 1, 1);
  CHECK(w11.entries() == w00.entries());

  CHECK_THROWS_AS(build_block(f, sp, 3, 0), std::invalid_argument);
}

TEST_CASE("full matrix entries follow the block formula") {
  auto f = build_field(16);
  const SubgroupPair sp = make_subgroup_pair(*f, 3, 5);
  const BaseMatrix w = build_full(f, 3, 5);
  REQUIRE(w.rows() == 15);
  REQUIRE(w.cols() == 15);

  std::size_t zeros = 0;
  for (std::size_t r = 0; r < 15; ++r)
    for (std::size_t c = 0; c < 15; ++c) zeros += w.at(r, c).is_zero();
  CHECK(zeros == 15);
  for (std::size_t t = 0; t < 15; ++t) CHECK(w.at(t, t).is_zero());

  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j)
      for (std::uint32_t k = 0; k < 5; ++k)
        for (std::uint32_t l = 0; l < 5; ++l) {
          const FieldElem expected =
              f->sub(f->mul(f->pow(sp.delta, (j + 3 - i) % 3), sp.g1[k]), sp.g1[l]);
          CHECK(w.at(i * 5 + k, j * 5 + l) == expected);
        }
}

TEST_CASE("block-circulant identity of the full matrix") {
  auto f = build_field(16);
  const std::uint32_t c = 3, n = 5;
  const BaseMatrix w = build_full(f, c, n);
  for (std::uint32_t i = 0; i < c; ++i)
    for (std::uint32_t j = 0; j < c; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t l = 0; l < n; ++l)
          CHECK(w.at(((i + 1) % c) * n + k, ((j + 1) % c) * n + l) == w.at(i * n + k, j * n + l));
}

TEST_CASE("c=1 reproduces the [alpha^i + alpha^j] form") {
  auto f = build_field(64);
  const BaseMatrix w = build_full(f, 1, 63);
  for (std::size_t i = 0; i < 63; i += 7)
    for (std::size_t j = 0; j < 63; j += 5)
      CHECK(w.at(i, j) == f->add(f->alpha_pow(i), f->alpha_pow(j)));
}

TEST_CASE("c=q-1 reproduces the circulant alpha^{j-i} - 1 form") {
  auto f = build_field(4);
  const BaseMatrix w = build_full(f, 3, 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(w.at(i, j) ==
            f->sub(f->alpha_pow(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i)),
                   f->one()));
  // rows are right cyclic-shifts of each other
  for (std::size_t i = 1; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(w.at(i, j) == w.at(i - 1, (j + 3 - 1) % 3));
}

TEST_CASE("wstar takes the first block columns") {
  auto f = build_field(16);
  const SubgroupPair sp = make_subgroup_pair(*f, 3, 5);
  const BaseMatrix ws = build_wstar(f, sp);
  REQUIRE(ws.rows() == 5);
  REQUIRE(ws.cols() == 3);
  CHECK(ws.at(0, 0).is_zero());
  for (std::uint32_t k = 0; k < 5; ++k) {
    CHECK(ws.at(k, 0) == f->sub(sp.g1[k], f->one()));
    for (std::uint32_t j = 0; j < 3; ++j)
      CHECK(ws.at(k, j) == f->sub(f->mul(sp.g2[j], sp.g1[k]), f->one()));
  }

  const SubgroupPair sp1 = make_subgroup_pair(*f, 1, 15);
  const BaseMatrix ws1 = build_wstar(f, sp1);
  CHECK(ws1.cols() == 1);
  CHECK(ws1.at(0, 0).is_zero());
}

TEST_CASE("row-distance constraint holds on the constructions") {
  for (std::uint32_t q : {4u, 8u, 16u}) {
    auto f = build_field(q);
    for (const auto& [c, n] : coprime_factorizations(q - 1)) {
      const BaseMatrix w = build_full(f, c, n);
      const RdVerdict v = verify_rd_constraint(w);
      CHECK(v.holds);
    }
  }
}

TEST_CASE("row-distance verdict matches the literal quadruple scan") {
  auto f4 = build_field(4);
  auto f8 = build_field(8);

  std::vector<BaseMatrix> cases;
  cases.push_back(build_full(f4, 1, 3));
  cases.push_back(build_full(f4, 3, 1));
  cases.push_back(build_full(f8, 1, 7));
  // doctored: two equal rows
  {
    const BaseMatrix w = build_full(f4, 1, 3);
    std::vector<FieldElem> e = w.entries();
    for (std::size_t c = 0; c < 3; ++c) e[1 * 3 + c] = e[0 * 3 + c];
    cases.emplace_back(f4, 3, 3, std::move(e));
  }
  // doctored: rows that agree at two positions under scaling
  {
    auto f = f8;
    std::vector<FieldElem> e = {f->alpha_pow(0), f->alpha_pow(1), f->alpha_pow(2),
                                f->alpha_pow(3), f->alpha_pow(4), f->alpha_pow(5)};
    cases.emplace_back(f, 2, 3, std::move(e));
  }
  // doctored: shared zero positions
  {
    auto f = f8;
    std::vector<FieldElem> e = {f->zero(), f->zero(), f->alpha_pow(2),
                                f->zero(), f->zero(), f->alpha_pow(5)};
    cases.emplace_back(f, 2, 3, std::move(e));
  }

  for (const BaseMatrix& w : cases) {
    const RdVerdict fast = verify_rd_constraint(w);
    const auto slow = literal_rd_scan(w);
    CHECK(fast.holds == !slow.has_value());
    if (slow) {
      REQUIRE(fast.counterexample.has_value());
      CHECK(fast.counterexample->row1 == slow->row1);
      CHECK(fast.counterexample->row2 == slow->row2);
      CHECK(fast.counterexample->scalar1 == slow->scalar1);
      CHECK(fast.counterexample->scalar2 == slow->scalar2);
      CHECK(fast.counterexample->positions == slow->positions);
    }
  }
}

TEST_CASE("equal rows give the canonical counterexample") {
  auto f = build_field(4);
  const BaseMatrix w0 = build_full(f, 1, 3);
  std::vector<FieldElem> e = w0.entries();
  for (std::size_t c = 0; c < 3; ++c) e[1 * 3 + c] = e[0 * 3 + c];
  const BaseMatrix w(f, 3, 3, std::move(e));
  const RdVerdict v = verify_rd_constraint(w);
  REQUIRE_FALSE(v.holds);
  CHECK(v.counterexample->row1 == 0);
  CHECK(v.counterexample->row2 == 1);
  CHECK(v.counterexample->scalar1 == 0);
  CHECK(v.counterexample->scalar2 == 0);
  CHECK(v.counterexample->positions == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("structural properties hold on built matrices") {
  auto f16 = build_field(16);
  const StructuralReport full = verify_structural_properties(build_full(f16, 3, 5));
  CHECK(full.all());

  // Eq.(6)-form matrix: shifts use beta = alpha
  auto f8 = build_field(8);
  const StructuralReport eq6 = verify_structural_properties(build_full(f8, 1, 7));
  CHECK(eq6.all());

  const SubgroupPair sp = make_subgroup_pair(*f16, 3, 5);
  CHECK(verify_structural_properties(build_block(f16, sp, 0, 2)).all());
  CHECK(verify_structural_properties(build_block(f16, sp, 2, 2)).all());
}

TEST_CASE("structural check flags a doctored matrix and rejects plain ones") {
  auto f = build_field(8);
  const BaseMatrix w0 = build_full(f, 1, 7);
  std::vector<FieldElem> e = w0.entries();
  for (std::size_t c = 0; c < 7; ++c) e[2 * 7 + c] = e[0 * 7 + c];
  const BaseMatrix doctored(f, 7, 7, std::move(e), BaseKind::kFull, 1, 7);
  const StructuralReport rep = verify_structural_properties(doctored);
  CHECK_FALSE(rep.lines_differ_everywhere);
  CHECK_FALSE(rep.all());

  const BaseMatrix plain(f, 1, 2, {f->one(), f->alpha()});
  CHECK_THROWS_AS(verify_structural_properties(plain), std::invalid_argument);
}

TEST_CASE("zero pattern of build_full is exactly the diagonal") {
  for (std::uint32_t q : {4u, 8u, 16u}) {
    auto f = build_field(q);
    for (const auto& [c, n] : coprime_factorizations(q - 1)) {
      const BaseMatrix w = build_full(f, c, n);
      for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t s = 0; s < w.cols(); ++s)
          CHECK(w.at(r, s).is_zero() == (r == s));
    }
  }
}

TEST_CASE("rd check needs at least two rows") {
  auto f = build_field(4);
  const BaseMatrix one_row(f, 1, 3, {f->zero(), f->one(), f->alpha()});
  CHECK_THROWS_AS(verify_rd_constraint(one_row), std::invalid_argument);
}
