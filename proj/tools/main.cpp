// Command-line front end: build -> select/mask -> check -> rank -> export ->
// simulate, over the documented grid/alist/CSV formats.
//
// Exit codes: 0 success, 1 usage or config error, 2 constraint violated
// (RC failure, rank cross-check mismatch), 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qc/analysis.hpp"
#include "qc/base_matrix.hpp"
#include "qc/codec.hpp"
#include "qc/dispersion.hpp"
#include "qc/io.hpp"

namespace {

int g_exit_code = 0;

std::vector<std::uint32_t> parse_index_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

// "2:57,3:44,8:20,30:5" -> {weight: count}
qc::WeightHist parse_hist(const std::string& text) {
  qc::WeightHist hist;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("weight histogram entries use weight:count");
    hist[static_cast<std::uint32_t>(std::stoul(item.substr(0, colon)))] +=
        static_cast<std::uint32_t>(std::stoul(item.substr(colon + 1)));
  }
  return hist;
}

std::string hist_to_string(const qc::WeightHist& h) {
  std::string out;
  for (const auto& [w, c] : h) {
    if (!out.empty()) out += ',';
    out += std::to_string(w) + ':' + std::to_string(c);
  }
  return out;
}

// expanded column/row weight histograms straight from the block weights:
// every expanded line inside block index j has weight equal to the number of
// CPMs in that block line
qc::WeightHist expanded_hist(const std::vector<std::uint32_t>& block_weights,
                             std::uint32_t L) {
  qc::WeightHist h;
  for (std::uint32_t w : block_weights) h[w] += L;
  return h;
}

void emit(std::ostream& os, const std::string& key, const std::string& value) {
  os << key << '=' << value << '\n';
}

void echo_field(std::ostream& os, const qc::Field& f) {
  emit(os, "q", std::to_string(f.q()));
  if (f.characteristic() == 2 && f.extension_degree() > 1) {
    std::string bits;
    for (std::uint8_t c : f.modulus()) bits += static_cast<char>('0' + c);
    emit(os, "modulus", bits);  // coefficients c0..cm, low to high
  } else {
    emit(os, "alpha", std::to_string(f.rep(f.alpha())));
  }
}

void describe_grid(std::ostream& os, const qc::CpmArray& grid) {
  emit(os, "block_size", std::to_string(grid.block_size()));
  emit(os, "grid_rows", std::to_string(grid.rows()));
  emit(os, "grid_cols", std::to_string(grid.cols()));
  emit(os, "zm_count", std::to_string(grid.zm_count()));
  emit(os, "matrix_rows", std::to_string(grid.rows() * grid.block_size()));
  emit(os, "matrix_cols", std::to_string(grid.cols() * grid.block_size()));
  emit(os, "col_weights",
       hist_to_string(expanded_hist(grid.col_block_weights(), grid.block_size())));
  emit(os, "row_weights",
       hist_to_string(expanded_hist(grid.row_block_weights(), grid.block_size())));
}

qc::MaskMatrix load_mask_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qc::IoError("cannot open " + path);
  std::size_t rows = 0, cols = 0;
  if (!(f >> rows >> cols)) throw qc::IoError("malformed mask header");
  std::vector<std::uint8_t> bits(rows * cols);
  for (auto& b : bits) {
    int v = 0;
    if (!(f >> v) || (v != 0 && v != 1)) throw qc::IoError("mask entries must be 0 or 1");
    b = static_cast<std::uint8_t>(v);
  }
  return qc::MaskMatrix::from_bits(rows, cols, std::move(bits));
}

struct BuildOpts {
  std::uint32_t q = 0;
  std::uint32_t c = 1;
  std::uint32_t n = 0;
  std::uint32_t gamma = 0, rho = 0;
  std::string rows_list, cols_list;
  std::string mask_file, mask_cols, mask_rows;
  std::uint64_t mask_seed = 1;
  std::string out, base_out;
};

void run_build(const BuildOpts& o) {
  auto field = qc::build_field(o.q);
  if (o.c < 1 || (o.q - 1) % o.c != 0)
    throw std::invalid_argument("c must divide q-1");
  const std::uint32_t n = o.n ? o.n : (o.q - 1) / o.c;
  const qc::BaseMatrix w = qc::build_full(field, o.c, n);
  qc::CpmArray grid = qc::disperse(w);

  if (o.gamma || o.rho) {
    if (!o.gamma || !o.rho)
      throw std::invalid_argument("--gamma and --rho must be given together");
    const auto [rows, cols] = qc::select_zm_free(grid, o.gamma, o.rho);
    grid = qc::subarray(grid, rows, cols);
  } else if (!o.rows_list.empty() || !o.cols_list.empty()) {
    std::vector<std::uint32_t> rows = parse_index_list(o.rows_list);
    std::vector<std::uint32_t> cols = parse_index_list(o.cols_list);
    if (rows.empty())
      for (std::uint32_t i = 0; i < grid.rows(); ++i) rows.push_back(i);
    if (cols.empty())
      for (std::uint32_t i = 0; i < grid.cols(); ++i) cols.push_back(i);
    grid = qc::subarray(grid, rows, cols);
  }

  std::string mask_desc;
  if (!o.mask_file.empty()) {
    grid = qc::mask(grid, load_mask_file(o.mask_file));
    mask_desc = "file:" + o.mask_file;
  } else if (!o.mask_cols.empty() || !o.mask_rows.empty()) {
    const qc::MaskMatrix z = qc::build_mask_random(
        static_cast<std::uint32_t>(grid.rows()), static_cast<std::uint32_t>(grid.cols()),
        parse_hist(o.mask_cols), parse_hist(o.mask_rows), o.mask_seed);
    grid = qc::mask(grid, z);
    mask_desc = "random:seed=" + std::to_string(o.mask_seed);
  }

  echo_field(std::cout, *field);
  emit(std::cout, "c", std::to_string(o.c));
  emit(std::cout, "n", std::to_string(n));
  if (!mask_desc.empty()) emit(std::cout, "mask", mask_desc);
  describe_grid(std::cout, grid);

  if (!o.out.empty()) {
    qc::save_grid(o.out, grid);
    emit(std::cout, "grid_file", o.out);
  }
  if (!o.base_out.empty()) {
    qc::save_base_matrix(o.base_out, w);
    emit(std::cout, "base_file", o.base_out);
  }
}

struct CheckOpts {
  std::string grid;
  std::string out;
  bool skip_girth = false;
};

void run_check(const CheckOpts& o) {
  const qc::CpmArray grid = qc::load_grid(o.grid);
  const qc::BinaryMatrix m = qc::expand(grid);

  std::ostringstream report;
  describe_grid(report, grid);

  const qc::RcVerdict rc = qc::rc_check(m);
  emit(report, "rc", rc.holds ? "holds" : "violation");
  if (!rc.holds)
    emit(report, "rc_violation",
         std::to_string(rc.violation->row1) + ',' + std::to_string(rc.violation->row2) +
             ',' + std::to_string(rc.violation->pos1) + ',' +
             std::to_string(rc.violation->pos2));

  const qc::CpmCycleVerdict screen = qc::cpm_four_cycle_check(grid);
  emit(report, "four_cycle_free", screen.holds ? "true" : "false");

  if (!o.skip_girth) {
    const qc::GirthReport g = qc::girth(m);
    emit(report, "girth", g.unbounded ? "unbounded" : std::to_string(g.girth));
  }

  if (o.out.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw qc::IoError("cannot write " + o.out);
    f << report.str();
  }
  if (!rc.holds) g_exit_code = 2;
}

struct RankOpts {
  std::string grid, alist;
  std::string method = "elimination";
  bool cross_check = false;
};

// The closed form covers exactly the first-rows slices of the dispersion of
// [alpha^i + alpha^j] over GF(2^m) with the default modulus.
bool matches_eq6_slice(const qc::CpmArray& grid, std::uint32_t* m_out) {
  const std::uint32_t q = grid.block_size() + 1;
  if ((q & (q - 1)) != 0 || q < 4) return false;
  if (grid.cols() != grid.block_size() || grid.rows() > grid.block_size()) return false;
  const qc::Field f(q);
  for (std::size_t i = 0; i < grid.rows(); ++i)
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      const qc::FieldElem e = f.add(f.alpha_pow(i), f.alpha_pow(j));
      const std::int32_t expect = e.is_zero() ? qc::CpmArray::kZm : e.log;
      if (grid.at(i, j) != expect) return false;
    }
  std::uint32_t m = 0;
  for (std::uint32_t t = q; t > 1; t >>= 1) ++m;
  *m_out = m;
  return true;
}

qc::BaseMatrix grid_to_base(const qc::CpmArray& grid) {
  const std::uint32_t q = grid.block_size() + 1;
  auto field = qc::build_field(q);
  std::vector<qc::FieldElem> entries;
  entries.reserve(grid.rows() * grid.cols());
  for (std::int32_t e : grid.grid())
    entries.push_back(e == qc::CpmArray::kZm ? field->zero() : field->elem(e));
  return qc::BaseMatrix(field, grid.rows(), grid.cols(), std::move(entries));
}

void run_rank(const RankOpts& o) {
  if (o.grid.empty() == o.alist.empty())
    throw std::invalid_argument("give exactly one of --grid or --alist");

  std::optional<qc::CpmArray> grid;
  qc::BinaryMatrix m;
  if (!o.grid.empty()) {
    grid = qc::load_grid(o.grid);
    m = qc::expand(*grid);
  } else {
    m = qc::load_alist(o.alist);
  }
  emit(std::cout, "matrix_rows", std::to_string(m.rows()));
  emit(std::cout, "matrix_cols", std::to_string(m.cols()));

  const auto closed_form_rank = [&]() -> std::size_t {
    std::uint32_t mm = 0;
    if (!grid || !matches_eq6_slice(*grid, &mm))
      throw std::invalid_argument(
          "closed-form ranks apply only to first-row slices of the "
          "[alpha^i + alpha^j] dispersion over GF(2^m)");
    return qc::rank_formula(mm, static_cast<std::uint32_t>(grid->rows()));
  };

  const auto report_rank = [&](const std::string& method, std::size_t rank) {
    emit(std::cout, "method", method);
    emit(std::cout, "rank", std::to_string(rank));
    emit(std::cout, "redundant_rows", std::to_string(m.rows() - rank));
    emit(std::cout, "n", std::to_string(m.cols()));
    emit(std::cout, "k", std::to_string(m.cols() - rank));
  };

  if (o.method == "elimination") {
    report_rank("elimination", qc::rank_gf2(m).rank);
  } else if (o.method == "closed-form") {
    report_rank("closed-form", closed_form_rank());
  } else if (o.method == "hadamard") {
    if (!grid) throw std::invalid_argument("--method hadamard needs a grid input");
    const qc::RankReport rep = qc::rank_via_hadamard(grid_to_base(*grid));
    report_rank("hadamard", rep.rank);
    for (const auto& [l, r] : rep.per_l_ranks)
      emit(std::cout, "per_l_rank", std::to_string(l) + ':' + std::to_string(r));
  } else {
    throw std::invalid_argument("unknown method: " + o.method);
  }

  if (o.cross_check) {
    const std::size_t elim = qc::rank_gf2(m).rank;
    std::size_t other = 0;
    std::string other_name;
    std::uint32_t mm = 0;
    if (grid && matches_eq6_slice(*grid, &mm)) {
      other = qc::rank_formula(mm, static_cast<std::uint32_t>(grid->rows()));
      other_name = "closed-form";
    } else if (grid && ((grid->block_size() + 1) & grid->block_size()) == 0) {
      other = qc::rank_via_hadamard(grid_to_base(*grid)).rank;
      other_name = "hadamard";
    } else {
      throw std::invalid_argument("cross-check needs a characteristic-2 grid input");
    }
    emit(std::cout, "cross_check_elimination", std::to_string(elim));
    emit(std::cout, "cross_check_" + other_name, std::to_string(other));
    emit(std::cout, "cross_check", elim == other ? "agree" : "disagree");
    if (elim != other) g_exit_code = 2;
  }
}

struct ExportOpts {
  std::string grid;
  std::string out;
};

void run_export(const ExportOpts& o) {
  qc::save_alist(o.out, qc::expand(qc::load_grid(o.grid)));
}

struct SimulateOpts {
  std::string grid, alist;
  std::string snrs;
  std::string decoder = "spa";
  std::uint64_t seed = 1;
  std::uint32_t max_iters = 50;
  std::string iters_list;
  std::uint64_t target_errors = 100;
  std::uint64_t max_frames = 1'000'000;
  std::string mode = "all-zero";
  bool noiseless = false;
  std::uint32_t threads = 0;
  std::string out;
};

void run_simulate(const SimulateOpts& o) {
  if (o.grid.empty() == o.alist.empty())
    throw std::invalid_argument("give exactly one of --grid or --alist");

  std::optional<qc::CpmArray> grid;
  qc::BinaryMatrix m;
  if (!o.grid.empty()) {
    grid = qc::load_grid(o.grid);
    m = qc::expand(*grid);
  } else {
    m = qc::load_alist(o.alist);
  }
  const qc::LinearCode code(std::move(m), grid ? &*grid : nullptr);

  qc::SimConfig cfg;
  cfg.ebno_db = parse_double_list(o.snrs);
  cfg.seed = o.seed;
  cfg.max_iters = o.max_iters;
  if (!o.iters_list.empty()) cfg.snapshots = parse_index_list(o.iters_list);
  cfg.stop = {o.max_frames, o.target_errors};
  cfg.noiseless = o.noiseless;
  cfg.threads = o.threads;
  if (o.decoder == "spa")
    cfg.decoder = qc::DecoderKind::kSpa;
  else if (o.decoder == "min-sum")
    cfg.decoder = qc::DecoderKind::kMinSum;
  else if (o.decoder == "osmlgd")
    cfg.decoder = qc::DecoderKind::kOsmlgd;
  else
    throw std::invalid_argument("unknown decoder: " + o.decoder);
  if (o.mode == "all-zero")
    cfg.all_zero = true;
  else if (o.mode == "encode")
    cfg.all_zero = false;
  else
    throw std::invalid_argument("unknown mode: " + o.mode);

  std::fprintf(stderr, "code: n=%zu k=%zu rate=%.4f\n", code.n(), code.k(), code.rate());
  cfg.on_point = [](const qc::SimPoint& pt) {
    std::fprintf(stderr, "ebno=%g dB: frames=%llu", pt.ebno_db,
                 static_cast<unsigned long long>(pt.frames));
    for (const auto& st : pt.stats)
      std::fprintf(stderr, "  iters<=%u: ber=%.4g bler=%.4g", st.iter_cap, st.ber, st.bler);
    std::fprintf(stderr, "\n");
  };

  const qc::SimReport rep = qc::awgn_simulate(code, cfg);
  qc::save_sim_csv(o.out, rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QC-LDPC codes from cyclic subgroups of finite fields"};
  app.set_config("--config", "", "read options from an INI file ([section] per subcommand)");
  app.require_subcommand(1);

  BuildOpts b;
  auto* build = app.add_subcommand("build", "construct a dispersed CPM grid");
  build->add_option("--q", b.q, "field size (prime or 2^m)")->required();
  build->add_option("--c", b.c, "factor c of q-1 (default 1)");
  build->add_option("--n", b.n, "factor n of q-1 (default (q-1)/c)");
  build->add_option("--gamma", b.gamma, "row blocks of the ZM-free subarray");
  build->add_option("--rho", b.rho, "column blocks of the ZM-free subarray");
  build->add_option("--rows", b.rows_list, "explicit row block indices, comma separated");
  build->add_option("--cols", b.cols_list, "explicit column block indices");
  build->add_option("--mask-file", b.mask_file, "mask file: 'rows cols' then 0/1 entries");
  build->add_option("--mask-cols", b.mask_cols, "random mask column histogram w:n,...");
  build->add_option("--mask-rows", b.mask_rows, "random mask row histogram w:n,...");
  build->add_option("--mask-seed", b.mask_seed, "random mask seed");
  build->add_option("--out", b.out, "output grid file");
  build->add_option("--base-out", b.base_out, "also write the q-ary base matrix");
  build->callback([&b]() { run_build(b); });

  CheckOpts c;
  auto* check = app.add_subcommand("check", "RC verdict, girth and weight profiles");
  check->add_option("--grid", c.grid, "grid file")->required();
  check->add_option("--out", c.out, "write the report here instead of stdout");
  check->add_flag("--skip-girth", c.skip_girth, "skip the BFS girth computation");
  check->callback([&c]() { run_check(c); });

  RankOpts r;
  auto* rank = app.add_subcommand("rank", "rank of the expanded parity-check matrix");
  rank->add_option("--grid", r.grid, "grid file");
  rank->add_option("--alist", r.alist, "alist file");
  rank->add_option("--method", r.method, "elimination | closed-form | hadamard");
  rank->add_flag("--cross-check", r.cross_check, "run two methods and compare");
  rank->callback([&r]() { run_rank(r); });

  ExportOpts e;
  auto* exp = app.add_subcommand("export", "expand a grid and write it as alist");
  exp->add_option("--grid", e.grid, "grid file")->required();
  exp->add_option("--out", e.out, "alist output file")->required();
  exp->callback([&e]() { run_export(e); });

  SimulateOpts s;
  auto* sim = app.add_subcommand("simulate", "seeded AWGN Monte-Carlo sweep");
  sim->add_option("--grid", s.grid, "grid file");
  sim->add_option("--alist", s.alist, "alist file");
  sim->add_option("--snrs", s.snrs, "Eb/N0 grid in dB, comma separated")->required();
  sim->add_option("--decoder", s.decoder, "spa | min-sum | osmlgd");
  sim->add_option("--seed", s.seed, "simulation seed");
  sim->add_option("--max-iters", s.max_iters, "iteration cap (default 50)");
  sim->add_option("--iters", s.iters_list,
                  "iteration caps reported from one pass, e.g. 5,10,50");
  sim->add_option("--target-errors", s.target_errors, "frame errors per point");
  sim->add_option("--max-frames", s.max_frames, "frame cap per point");
  sim->add_option("--mode", s.mode, "all-zero | encode");
  sim->add_flag("--noiseless", s.noiseless, "clean channel sanity mode");
  sim->add_option("--threads", s.threads, "worker threads (default: hardware)");
  sim->add_option("--out", s.out, "CSV output file")->required();
  sim->callback([&s]() { run_simulate(s); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 1;
  } catch (const qc::IoError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return g_exit_code;
}
