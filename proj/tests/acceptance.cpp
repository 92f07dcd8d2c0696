// Acceptance suite: one binary, one pass/fail line per criterion.
// Run all criteria with no arguments, or a subset by number: ./acceptance 2 7
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qc/analysis.hpp"
#include "qc/base_matrix.hpp"
#include "qc/codec.hpp"
#include "qc/dispersion.hpp"

using namespace qc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& msg) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
  void note(const std::string& msg) {
    if (pass && detail.empty()) detail = msg;
  }
};

BaseMatrix first_rows(const BaseMatrix& w, std::size_t gamma) {
  std::vector<FieldElem> e(w.entries().begin(), w.entries().begin() + gamma * w.cols());
  return BaseMatrix(w.field_ptr(), gamma, w.cols(), std::move(e));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> coprime_factorizations(std::uint32_t q1) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t c = 1; c <= q1; ++c)
    if (q1 % c == 0 && std::gcd(c, q1 / c) == 1) out.emplace_back(c, q1 / c);
  return out;
}

std::uint64_t pow3(std::uint32_t m) {
  std::uint64_t p = 1;
  while (m--) p *= 3;
  return p;
}

// Criterion 1: closed form vs elimination, exhaustive for m in {3,4,5}.
Outcome criterion1() {
  Outcome out;
  for (std::uint32_t m : {3u, 4u, 5u}) {
    auto f = build_field(1u << m);
    const BaseMatrix w = build_full(f, 1, (1u << m) - 1);
    for (std::uint32_t gamma = 1; gamma < (1u << m); ++gamma) {
      const std::uint64_t formula = rank_formula(m, gamma);
      const std::size_t elim = rank_gf2(expand(disperse(first_rows(w, gamma)))).rank;
      if (formula != elim)
        out.fail("m=" + std::to_string(m) + " gamma=" + std::to_string(gamma) + ": formula " +
                 std::to_string(formula) + " != elimination " + std::to_string(elim));
    }
  }
  out.note("m=3,4,5 exhaustive over gamma: formula == elimination");
  return out;
}

// Criterion 2: the published rank values, closed form plus elimination.
Outcome criterion2() {
  Outcome out;
  const auto expect = [&](std::uint32_t m, std::uint32_t gamma, std::uint64_t want) {
    const std::uint64_t got = rank_formula(m, gamma);
    if (got != want)
      out.fail("rank_formula(" + std::to_string(m) + "," + std::to_string(gamma) + ")=" +
               std::to_string(got) + " want " + std::to_string(want));
  };
  expect(6, 6, 324);
  expect(7, 6, 692);
  expect(6, 63, 726);
  expect(4, 15, 78);

  // elimination cross-checks
  {
    auto f = build_field(64);
    const BaseMatrix w = build_full(f, 1, 63);
    const std::size_t r6 = rank_gf2(expand(disperse(first_rows(w, 6)))).rank;
    if (r6 != 324) out.fail("elimination H(6,63) rank " + std::to_string(r6));
    const std::size_t rf = rank_gf2(expand(disperse(w))).rank;
    if (rf != 726) out.fail("elimination full GF(64) rank " + std::to_string(rf));
  }
  {
    auto f = build_field(128);
    const BaseMatrix w6 = first_rows(build_full(f, 1, 127), 6);
    const std::size_t r = rank_gf2(expand(disperse(w6))).rank;
    if (r != 692) out.fail("elimination H(6,127) rank " + std::to_string(r));
  }
  {
    auto f = build_field(16);
    const CpmArray h = disperse(build_full(f, 3, 5));
    const LinearCode code = make_code(expand(h), &h);
    if (code.n() != 225 || code.k() != 147)
      out.fail("full GF(16) code is (" + std::to_string(code.n()) + "," +
               std::to_string(code.k()) + ")");
  }
  out.note("324 / 692 / 726 / 78 reproduced, elimination agrees");
  return out;
}

// Criterion 3: Hadamard-sum rank equals elimination rank of the dispersion.
Outcome criterion3() {
  Outcome out;
  std::mt19937 rng(20240815);
  int trials = 0;
  for (std::uint32_t q : {4u, 8u, 16u}) {
    auto f = build_field(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      std::vector<FieldElem> e;
      for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(f->from_rep(rng() % q));
      const BaseMatrix g(f, rows, cols, std::move(e));
      const std::size_t via_h = rank_via_hadamard(g).rank;
      const std::size_t via_e = rank_gf2(expand(disperse(g))).rank;
      ++trials;
      if (via_h != via_e)
        out.fail("GF(" + std::to_string(q) + ") " + std::to_string(rows) + "x" +
                 std::to_string(cols) + ": hadamard " + std::to_string(via_h) +
                 " != elimination " + std::to_string(via_e));
    }
  }
  out.note(std::to_string(trials) + " random matrices over GF(4)/GF(8)/GF(16) agree");
  return out;
}

// Criterion 4: per-power ranks match min(gamma, lambda_l) / min(gamma, 2^m-2).
Outcome criterion4() {
  Outcome out;
  for (std::uint32_t m : {3u, 4u}) {
    auto f = build_field(1u << m);
    const BaseMatrix w = build_full(f, 1, (1u << m) - 1);
    for (std::uint32_t gamma = 1; gamma < (1u << m); ++gamma) {
      const BaseMatrix slice = first_rows(w, gamma);
      for (std::uint32_t l = 1; l < (1u << m); ++l) {
        const std::size_t elim = rank_gfq(hadamard_power(slice, l)).rank;
        const std::uint64_t formula = theorem4_rank(m, gamma, l);
        if (elim != formula)
          out.fail("m=" + std::to_string(m) + " gamma=" + std::to_string(gamma) +
                   " l=" + std::to_string(l) + ": " + std::to_string(elim) + " vs " +
                   std::to_string(formula));
      }
    }
  }
  out.note("m=3,4: all (gamma, l) per-power ranks match");
  return out;
}

// Criterion 5: lambda identities against brute-force Pascal rows.
Outcome criterion5() {
  Outcome out;
  for (std::uint32_t m = 1; m <= 10; ++m) {
    std::vector<std::uint8_t> row = {1};
    std::uint64_t total = 0;
    for (std::uint32_t l = 0; l < (1u << m); ++l) {
      const std::uint64_t odd = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
      const std::uint64_t lam = lambda_l(l, m);
      total += lam;
      if (lam != odd)
        out.fail("lambda_" + std::to_string(l) + " (m=" + std::to_string(m) + ") = " +
                 std::to_string(lam) + ", Pascal row has " + std::to_string(odd));
      std::vector<std::uint8_t> next(row.size() + 1);
      next[0] = 1;
      for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] ^ row[i];
      next[row.size()] = 1;
      row = std::move(next);
    }
    if (total != pow3(m))
      out.fail("sum of lambda over m=" + std::to_string(m) + " is " + std::to_string(total) +
               ", want 3^m = " + std::to_string(pow3(m)));
  }
  out.note("lambda_l == odd-binomial count and sums to 3^m, m <= 10");
  return out;
}

// Criterion 6: RD / RC / girth suite plus the GF(379) subarray.
Outcome criterion6() {
  Outcome out;
  for (std::uint32_t q : {4u, 8u, 16u}) {
    auto f = build_field(q);
    for (const auto& [c, n] : coprime_factorizations(q - 1)) {
      const BaseMatrix w = build_full(f, c, n);
      if (!verify_rd_constraint(w).holds)
        out.fail("RD fails on q=" + std::to_string(q) + " c=" + std::to_string(c));
      const CpmArray h = disperse(w);
      for (std::uint32_t gamma : {2u, 3u}) {
        if (gamma + 1 > q - 1) continue;  // no ZM-free column left
        const std::uint32_t rho = (q - 1) - gamma;
        const auto [rows, cols] = select_zm_free(h, gamma, rho);
        const BinaryMatrix m = expand(subarray(h, rows, cols));
        if (!rc_check(m).holds)
          out.fail("RC fails on q=" + std::to_string(q) + " gamma=" + std::to_string(gamma));
        const GirthReport g = girth(m);
        if (!g.unbounded && g.girth < 6)
          out.fail("girth " + std::to_string(g.girth) + " on q=" + std::to_string(q) +
                   " gamma=" + std::to_string(gamma));
      }
    }
  }
  {
    auto f = build_field(379);
    const CpmArray h = disperse(build_full(f, 1, 378));
    const auto [rows, cols] = select_zm_free(h, 4, 32);
    const CpmArray sub = subarray(h, rows, cols);
    if (sub.zm_count() != 0) out.fail("GF(379) selection contains a ZM");
    if (!cpm_four_cycle_check(sub).holds) out.fail("GF(379) subarray has a 4-cycle");
    if (!rc_check(expand(sub)).holds) out.fail("GF(379) subarray violates RC");
  }
  out.note("RD on all coprime factorizations q=4,8,16; RC+girth on ZM-free subarrays; GF(379) 4x32 clean");
  return out;
}

// Criterion 7: exact code parameters of the five published codes.
Outcome criterion7() {
  Outcome out;
  const auto check_code = [&](const char* name, const CpmArray& h, std::size_t want_n,
                              std::size_t want_k, double want_rate, int rate_digits) {
    const LinearCode code = make_code(expand(h), &h);
    if (code.n() != want_n || code.k() != want_k) {
      out.fail(std::string(name) + ": got (" + std::to_string(code.n()) + "," +
               std::to_string(code.k()) + "), want (" + std::to_string(want_n) + "," +
               std::to_string(want_k) + ")");
      return;
    }
    const double scale = std::pow(10.0, rate_digits);
    if (std::llround(code.rate() * scale) != std::llround(want_rate * scale))
      out.fail(std::string(name) + ": rate " + std::to_string(code.rate()));
  };

  {
    auto f = build_field(16);
    check_code("(225,147)", disperse(build_full(f, 3, 5)), 225, 147, 0.653, 3);
  }
  {
    auto f = build_field(379);
    const CpmArray h = disperse(build_full(f, 1, 378));
    const auto [rows, cols] = select_zm_free(h, 4, 32);
    check_code("(12096,10587)", subarray(h, rows, cols), 12096, 10587, 0.8752, 4);
  }
  {
    auto f = build_field(64);
    const BaseMatrix w = build_full(f, 1, 63);
    check_code("(3969,3645)", disperse(first_rows(w, 6)), 3969, 3645, 3645.0 / 3969.0, 6);
    check_code("(3969,3243)", disperse(w), 3969, 3243, 3243.0 / 3969.0, 6);
  }
  {
    auto f = build_field(128);
    check_code("(16129,15437)", disperse(first_rows(build_full(f, 1, 127), 6)), 16129, 15437,
               15437.0 / 16129.0, 6);
  }
  out.note("(225,147) r=0.653, (12096,10587) r=0.8752, (3969,3645), (16129,15437), (3969,3243)");
  return out;
}

// Criterion 8: one-step majority-logic decoding corrects every weight-1..7
// pattern on the full GF(2^4) array code, 10000 random patterns per weight.
Outcome criterion8() {
  Outcome out;
  auto f = build_field(16);
  const CpmArray h = disperse(build_full(f, 3, 5));
  const LinearCode code = make_code(expand(h), &h);
  std::mt19937 rng(808);
  std::vector<std::uint8_t> received(code.n());
  std::vector<std::size_t> pos;
  for (std::uint32_t weight = 1; weight <= 7; ++weight) {
    for (int t = 0; t < 10000; ++t) {
      std::fill(received.begin(), received.end(), 0);
      pos.clear();
      while (pos.size() < weight) {
        const std::size_t p = rng() % code.n();
        if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
      }
      for (std::size_t p : pos) received[p] = 1;
      const OsmlgdResult res = osmlgd_decode(code, received);
      if (std::count(res.estimate.begin(), res.estimate.end(), 1) != 0) {
        out.fail("weight " + std::to_string(weight) + " pattern not corrected");
        break;
      }
    }
  }
  out.note("10000 random patterns per weight 1..7 all corrected");
  return out;
}

// Criterion 9: the Table-I mask is hit exactly and masking preserves RC.
Outcome criterion9() {
  Outcome out;
  const WeightHist table1_cols = {{2, 57}, {3, 44}, {8, 20}, {30, 5}};
  const WeightHist table1_rows = {{8, 11}, {9, 52}};
  const MaskMatrix z = build_mask_random(63, 126, table1_cols, table1_rows, 511);
  if (z.col_hist() != table1_cols) out.fail("column histogram off");
  if (z.row_hist() != table1_rows) out.fail("row histogram off");

  // grid-level application on the GF(2^9) base array
  {
    auto f = build_field(512);
    const CpmArray h = disperse(build_full(f, 7, 73));
    const auto [rows, cols] = select_zm_free(h, 63, 126);
    const CpmArray masked = mask(subarray(h, rows, cols), z);
    WeightHist got;
    for (std::uint32_t w : masked.col_block_weights()) ++got[w];
    if (got != table1_cols) out.fail("masked grid column block weights differ from Table I");
    WeightHist got_rows;
    for (std::uint32_t w : masked.row_block_weights()) ++got_rows[w];
    if (got_rows != table1_rows) out.fail("masked grid row block weights differ from Table I");
  }

  // small surrogate: histogram + RC preservation on the expansion
  {
    auto f = build_field(16);
    const CpmArray h = disperse(build_full(f, 3, 5));
    const auto [rows, cols] = select_zm_free(h, 3, 12);
    const CpmArray base = subarray(h, rows, cols);
    if (!rc_check(expand(base)).holds) out.fail("surrogate base array violates RC");
    const WeightHist cs = {{1, 4}, {2, 4}, {3, 4}};
    const WeightHist rs = {{8, 3}};
    const MaskMatrix zs = build_mask_random(3, 12, cs, rs, 16);
    if (zs.col_hist() != cs) out.fail("surrogate histogram off");
    if (!rc_check(expand(mask(base, zs))).holds)
      out.fail("masking broke the RC constraint on the surrogate");
  }
  out.note("Table I histograms exact on 63x126; RC preserved under masking");
  return out;
}

// Criterion 10: even codeword weight for the ZM-free code of criterion 7.
Outcome criterion10() {
  Outcome out;
  auto f = build_field(379);
  const CpmArray h = disperse(build_full(f, 1, 378));
  const auto [rows, cols] = select_zm_free(h, 4, 32);
  const BinaryMatrix m = expand(subarray(h, rows, cols));
  const PackedMatrix basis = null_space_basis(m);
  if (basis.rows() != 10587)
    out.fail("basis size " + std::to_string(basis.rows()) + ", want 10587");
  std::size_t odd = 0, outside = 0;
  for (std::size_t b = 0; b < basis.rows(); ++b) {
    if (basis.row_popcount(b) % 2 != 0) ++odd;
    if (!in_null_space(m, basis.row(b))) ++outside;
  }
  if (odd) out.fail(std::to_string(odd) + " basis vectors have odd weight");
  if (outside) out.fail(std::to_string(outside) + " basis vectors fail H v = 0");
  out.note("all 10587 null-space basis vectors are codewords of even weight");
  return out;
}

// Criterion 11: SPA waterfall behavior on the (225, 147) code.
Outcome criterion11() {
  Outcome out;
  auto f = build_field(16);
  const CpmArray h = disperse(build_full(f, 3, 5));
  const LinearCode code = make_code(expand(h), &h);

  SimConfig cfg;
  cfg.ebno_db = {1.0, 2.0, 3.0, 4.0};
  cfg.seed = 20240815;
  cfg.snapshots = {5, 10, 50};
  cfg.stop = {1'500'000, 100};
  const SimReport rep = awgn_simulate(code, cfg);

  std::ostringstream table;
  for (std::size_t p = 0; p < rep.points.size(); ++p) {
    const SimPoint& pt = rep.points[p];
    table << " " << pt.ebno_db << "dB:";
    for (const IterStats& st : pt.stats) {
      table << " ber" << st.iter_cap << "=" << st.ber;
      if (st.frame_errors < cfg.stop.target_frame_errors)
        out.fail(std::to_string(pt.ebno_db) + " dB, " + std::to_string(st.iter_cap) +
                 " iters: only " + std::to_string(st.frame_errors) + " frame errors");
    }
    // convergence ordering at each SNR point
    for (std::size_t s = 1; s < pt.stats.size(); ++s)
      if (pt.stats[s - 1].ber < pt.stats[s].ber)
        out.fail(std::to_string(pt.ebno_db) + " dB: BER(" +
                 std::to_string(pt.stats[s - 1].iter_cap) + ") < BER(" +
                 std::to_string(pt.stats[s].iter_cap) + ")");
  }
  // strictly decreasing BER across the SNR grid, per iteration cap
  for (std::size_t s = 0; s < rep.points.front().stats.size(); ++s)
    for (std::size_t p = 1; p < rep.points.size(); ++p)
      if (!(rep.points[p].stats[s].ber < rep.points[p - 1].stats[s].ber))
        out.fail("BER not strictly decreasing at cap " +
                 std::to_string(rep.points.front().stats[s].iter_cap) + " between " +
                 std::to_string(rep.points[p - 1].ebno_db) + " and " +
                 std::to_string(rep.points[p].ebno_db) + " dB");
  out.note(table.str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(static_cast<int>(i));

  int failures = 0;
  for (int idx : selected) {
    if (idx < 1 || idx > static_cast<int>(criteria.size())) {
      std::printf("criterion %d: unknown\n", idx);
      ++failures;
      continue;
    }
    const Outcome o = criteria[idx - 1]();
    std::printf("criterion %d: %s%s%s\n", idx, o.pass ? "PASS" : "FAIL",
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
