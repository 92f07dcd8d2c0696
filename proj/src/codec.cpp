#include "qc/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

namespace qc {

namespace {

constexpr double kMsgClamp = 30.0;

double clamp_msg(double x) { return std::clamp(x, -kMsgClamp, kMsgClamp); }

}  // namespace

LinearCode::LinearCode(BinaryMatrix h, const CpmArray* source) : h_(std::move(h)) {
  Rref r = rref_gf2(h_);
  rref_ = std::move(r.mat);
  pivot_cols_ = std::move(r.pivot_cols);

  std::vector<char> is_pivot(n(), 0);
  for (std::uint32_t c : pivot_cols_) is_pivot[c] = 1;
  info_cols_.reserve(n() - pivot_cols_.size());
  for (std::uint32_t c = 0; c < n(); ++c)
    if (!is_pivot[c]) info_cols_.push_back(c);

  const auto cw = h_.col_weights();
  for (std::uint32_t w : cw) ++col_profile_[w];
  for (std::uint32_t w : h_.row_weights()) ++row_profile_[w];

  const std::uint32_t min_cw = cw.empty() ? 0 : *std::min_element(cw.begin(), cw.end());
  dmin_ = {min_cw + 1, DminBound::Tag::kGammaPlus1};
  if (source && source->rows() * source->block_size() == h_.rows() &&
      source->cols() * source->block_size() == h_.cols()) {
    const std::uint32_t gamma = static_cast<std::uint32_t>(source->rows());
    const auto bw = source->col_block_weights();
    const std::uint32_t min_bw = *std::min_element(bw.begin(), bw.end());
    if (min_bw == gamma)
      dmin_ = (gamma % 2 == 1)
                  ? DminBound{gamma + 1, DminBound::Tag::kGammaPlus1}
                  : DminBound{gamma + 2, DminBound::Tag::kGammaPlus2Even};
    else if (min_bw + 1 >= gamma)
      dmin_ = {gamma, DminBound::Tag::kGammaWithZms};
    // heavier masking: keep the column-weight fallback
  }

  const std::size_t m = h_.rows();
  chk_start_.assign(m + 1, 0);
  for (std::size_t r2 = 0; r2 < m; ++r2)
    chk_start_[r2 + 1] = chk_start_[r2] + static_cast<std::uint32_t>(h_.row_weight(r2));
  const std::size_t ne = chk_start_[m];
  edge_var_.resize(ne);
  edge_chk_.resize(ne);
  std::size_t e = 0;
  for (std::size_t r2 = 0; r2 < m; ++r2) {
    max_check_degree_ = std::max<std::uint32_t>(
        max_check_degree_, static_cast<std::uint32_t>(h_.row_weight(r2)));
    for (std::uint32_t c : h_.row(r2)) {
      edge_var_[e] = c;
      edge_chk_[e] = static_cast<std::uint32_t>(r2);
      ++e;
    }
  }
  var_start_.assign(n() + 1, 0);
  for (std::uint32_t v : edge_var_) ++var_start_[v + 1];
  for (std::size_t v = 0; v < n(); ++v) var_start_[v + 1] += var_start_[v];
  var_edges_.resize(ne);
  std::vector<std::uint32_t> fill(var_start_.begin(), var_start_.end() - 1);
  for (std::size_t e2 = 0; e2 < ne; ++e2)
    var_edges_[fill[edge_var_[e2]]++] = static_cast<std::uint32_t>(e2);
}

LinearCode make_code(BinaryMatrix h, const CpmArray* source) {
  return LinearCode(std::move(h), source);
}

std::vector<std::uint8_t> encode(const LinearCode& code, std::span<const std::uint8_t> message) {
  if (message.size() != code.k())
    throw std::invalid_argument("message length must equal the code dimension");
  const std::size_t n = code.n();
  std::vector<std::uint64_t> x((n + 63) / 64, 0);
  const auto& info = code.info_positions();
  for (std::size_t i = 0; i < info.size(); ++i)
    if (message[i] & 1) x[info[i] >> 6] |= 1ull << (info[i] & 63);
  // each reduced row fixes its pivot bit from the information bits
  const PackedMatrix& rr = code.reduced_rows();
  for (std::size_t r = 0; r < code.rank(); ++r) {
    auto row = rr.row(r);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < row.size(); ++w) acc ^= row[w] & x[w];
    if (std::popcount(acc) & 1) {
      const std::uint32_t p = code.pivot_cols()[r];
      x[p >> 6] ^= 1ull << (p & 63);
    }
  }
  std::vector<std::uint8_t> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = (x[v >> 6] >> (v & 63)) & 1u;
  return out;
}

bool is_codeword(const LinearCode& code, std::span<const std::uint8_t> v) {
  if (v.size() != code.n()) throw std::invalid_argument("length mismatch");
  const BinaryMatrix& h = code.h();
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::uint32_t parity = 0;
    for (std::uint32_t c : h.row(r)) parity ^= v[c] & 1u;
    if (parity) return false;
  }
  return true;
}

namespace {

struct DecodeWorkspace {
  std::vector<double> c2v;
  std::vector<double> total;
  std::vector<double> tval, fwd, bwd;
  std::vector<std::uint8_t> hard;

  void reset(const LinearCode& code) {
    c2v.assign(code.edge_count(), 0.0);
    total.resize(code.n());
    const std::size_t d = code.max_check_degree();
    tval.resize(d);
    fwd.resize(d + 1);
    bwd.resize(d + 1);
    hard.resize(code.n());
  }
};

struct SnapshotState {
  std::vector<std::uint8_t> hard;
  std::uint32_t iterations = 0;
  bool converged = false;
};

// Runs message passing up to caps.back() iterations, capturing the decoder
// state at each requested cap. caps must be sorted ascending and nonempty.
void decode_with_caps(const LinearCode& code, std::span<const double> llr, bool min_sum,
                      std::span<const std::uint32_t> caps, DecodeWorkspace& ws,
                      std::vector<SnapshotState>& out) {
  const std::size_t n = code.n();
  const std::size_t m = code.h().rows();
  const auto& chk_start = code.chk_start();
  const auto& edge_var = code.edge_vars();

  ws.reset(code);
  for (std::size_t v = 0; v < n; ++v) ws.total[v] = llr[v];

  out.assign(caps.size(), {});
  std::size_t next_cap = 0;

  for (std::uint32_t iter = 1; iter <= caps.back(); ++iter) {
    // check-node pass
    for (std::size_t c = 0; c < m; ++c) {
      const std::uint32_t e0 = chk_start[c];
      const std::uint32_t deg = chk_start[c + 1] - e0;
      if (min_sum) {
        double min1 = kMsgClamp, min2 = kMsgClamp;
        std::uint32_t arg1 = 0;
        int sign = 1;
        for (std::uint32_t i = 0; i < deg; ++i) {
          const double v2c = clamp_msg(ws.total[edge_var[e0 + i]] - ws.c2v[e0 + i]);
          ws.tval[i] = v2c;
          const double mag = std::fabs(v2c);
          if (v2c < 0) sign = -sign;
          if (mag < min1) {
            min2 = min1;
            min1 = mag;
            arg1 = i;
          } else if (mag < min2) {
            min2 = mag;
          }
        }
        for (std::uint32_t i = 0; i < deg; ++i) {
          const double mag = (i == arg1) ? min2 : min1;
          const double s = (ws.tval[i] < 0 ? -1.0 : 1.0) * sign;
          ws.c2v[e0 + i] = s * mag;
        }
      } else {
        for (std::uint32_t i = 0; i < deg; ++i) {
          const double v2c = clamp_msg(ws.total[edge_var[e0 + i]] - ws.c2v[e0 + i]);
          ws.tval[i] = std::tanh(0.5 * v2c);
        }
        ws.fwd[0] = 1.0;
        for (std::uint32_t i = 0; i < deg; ++i) ws.fwd[i + 1] = ws.fwd[i] * ws.tval[i];
        ws.bwd[deg] = 1.0;
        for (std::uint32_t i = deg; i-- > 0;) ws.bwd[i] = ws.bwd[i + 1] * ws.tval[i];
        for (std::uint32_t i = 0; i < deg; ++i) {
          double p = ws.fwd[i] * ws.bwd[i + 1];
          p = std::clamp(p, -1.0 + 1e-15, 1.0 - 1e-15);
          ws.c2v[e0 + i] = clamp_msg(2.0 * std::atanh(p));
        }
      }
    }

    // variable-node pass and hard decision
    for (std::size_t v = 0; v < n; ++v) ws.total[v] = llr[v];
    for (std::size_t e = 0; e < edge_var.size(); ++e) ws.total[edge_var[e]] += ws.c2v[e];
    for (std::size_t v = 0; v < n; ++v) ws.hard[v] = ws.total[v] < 0.0;

    bool syndrome_zero = true;
    for (std::size_t c = 0; c < m && syndrome_zero; ++c) {
      std::uint32_t parity = 0;
      for (std::uint32_t e = chk_start[c]; e < chk_start[c + 1]; ++e)
        parity ^= ws.hard[edge_var[e]];
      syndrome_zero = parity == 0;
    }

    if (syndrome_zero) {
      for (std::size_t s = next_cap; s < caps.size(); ++s)
        out[s] = {ws.hard, iter, true};
      return;
    }
    while (next_cap < caps.size() && caps[next_cap] == iter) {
      out[next_cap] = {ws.hard, iter, false};
      ++next_cap;
    }
  }
}

SpaResult run_single(const LinearCode& code, std::span<const double> llr,
                     std::uint32_t max_iters, bool min_sum) {
  if (max_iters < 1) throw std::invalid_argument("need at least one iteration");
  if (llr.size() != code.n()) throw std::invalid_argument("LLR length mismatch");
  DecodeWorkspace ws;
  std::vector<SnapshotState> out;
  const std::uint32_t caps[1] = {max_iters};
  decode_with_caps(code, llr, min_sum, caps, ws, out);
  return {std::move(out[0].hard), out[0].iterations, out[0].converged};
}

}  // namespace

SpaResult spa_decode(const LinearCode& code, std::span<const double> llr,
                     std::uint32_t max_iters) {
  return run_single(code, llr, max_iters, false);
}

SpaResult min_sum_decode(const LinearCode& code, std::span<const double> llr,
                         std::uint32_t max_iters) {
  return run_single(code, llr, max_iters, true);
}

OsmlgdResult osmlgd_decode(const LinearCode& code, std::span<const std::uint8_t> hard) {
  if (hard.size() != code.n()) throw std::invalid_argument("length mismatch");
  const BinaryMatrix& h = code.h();
  std::vector<std::uint8_t> syndrome(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::uint32_t parity = 0;
    for (std::uint32_t c : h.row(r)) parity ^= hard[c] & 1u;
    syndrome[r] = static_cast<std::uint8_t>(parity);
  }
  OsmlgdResult res;
  res.estimate.assign(hard.begin(), hard.end());
  const auto& edge_chk = code.edge_checks();
  for (std::size_t v = 0; v < code.n(); ++v) {
    std::uint32_t failed = 0;
    for (std::uint32_t e : code.var_edges(v)) failed += syndrome[edge_chk[e]];
    if (2 * failed > code.var_degree(v)) {
      res.estimate[v] ^= 1u;
      ++res.flipped;
    }
  }
  return res;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t frame_seed(std::uint64_t seed, std::size_t point, std::uint64_t frame) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (point + 1)) ^ (frame + 1));
}

struct BlockAccum {
  std::uint64_t frames = 0;
  std::vector<IterStats> stats;  // raw counters per cap
};

BlockAccum run_block(const LinearCode& code, const SimConfig& cfg, std::size_t point,
                     double sigma, double sigma2, std::uint64_t first,
                     std::uint64_t count, const std::vector<std::uint32_t>& caps) {
  const std::size_t n = code.n();
  BlockAccum acc;
  acc.frames = count;
  acc.stats.resize(caps.size());
  for (std::size_t s = 0; s < caps.size(); ++s) acc.stats[s].iter_cap = caps[s];

  DecodeWorkspace ws;
  std::vector<SnapshotState> snaps;
  std::vector<double> llr(n);
  std::vector<std::uint8_t> cw(n, 0), msg, hard_in(n);

  for (std::uint64_t f = first; f < first + count; ++f) {
    std::mt19937_64 rng(frame_seed(cfg.seed, point, f));
    if (cfg.all_zero) {
      std::fill(cw.begin(), cw.end(), 0);
    } else {
      msg.resize(code.k());
      for (auto& b : msg) b = static_cast<std::uint8_t>(rng() & 1u);
      cw = encode(code, msg);
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
      const double s = cw[v] ? -1.0 : 1.0;
      if (cfg.noiseless) {
        llr[v] = s * kMsgClamp;
      } else {
        const double y = s + sigma * gauss(rng);
        llr[v] = 2.0 * y / sigma2;
      }
    }

    if (cfg.decoder == DecoderKind::kOsmlgd) {
      for (std::size_t v = 0; v < n; ++v) hard_in[v] = llr[v] < 0.0;
      const OsmlgdResult res = osmlgd_decode(code, hard_in);
      std::uint64_t errs = 0;
      for (std::size_t v = 0; v < n; ++v) errs += res.estimate[v] != cw[v];
      for (auto& st : acc.stats) {
        st.bit_errors += errs;
        st.frame_errors += errs > 0;
        st.iter_sum += 1;
      }
    } else {
      decode_with_caps(code, llr, cfg.decoder == DecoderKind::kMinSum, caps, ws, snaps);
      for (std::size_t s = 0; s < caps.size(); ++s) {
        std::uint64_t errs = 0;
        for (std::size_t v = 0; v < n; ++v) errs += snaps[s].hard[v] != cw[v];
        acc.stats[s].bit_errors += errs;
        acc.stats[s].frame_errors += errs > 0;
        acc.stats[s].iter_sum += std::min(snaps[s].iterations, caps[s]);
      }
    }
  }
  return acc;
}

}  // namespace

SimReport awgn_simulate(const LinearCode& code, const SimConfig& cfg) {
  if (cfg.ebno_db.empty()) throw std::invalid_argument("SNR list is empty");
  if (code.k() == 0) throw std::invalid_argument("zero-rate code");
  if (cfg.max_iters < 1) throw std::invalid_argument("need at least one iteration");

  std::vector<std::uint32_t> caps = cfg.snapshots;
  if (caps.empty()) caps.push_back(cfg.max_iters);
  std::sort(caps.begin(), caps.end());
  caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
  if (caps.front() < 1) throw std::invalid_argument("iteration caps must be positive");
  if (cfg.decoder == DecoderKind::kOsmlgd) caps = {1};

  const std::uint32_t threads =
      cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::uint64_t kBlockFrames = 128;

  SimReport report;
  report.config = cfg;
  report.n = code.n();
  report.k = code.k();

  for (std::size_t point = 0; point < cfg.ebno_db.size(); ++point) {
    const double ebno = cfg.ebno_db[point];
    const double sigma2 = 1.0 / (2.0 * code.rate() * std::pow(10.0, ebno / 10.0));
    const double sigma = std::sqrt(sigma2);

    SimPoint pt;
    pt.ebno_db = ebno;
    pt.stats.resize(caps.size());
    for (std::size_t s = 0; s < caps.size(); ++s) pt.stats[s].iter_cap = caps[s];

    std::uint64_t next_frame = 0;
    bool met = false;
    while (!met && next_frame < cfg.stop.max_frames) {
      std::vector<std::future<BlockAccum>> futs;
      std::vector<std::uint64_t> counts;
      for (std::uint32_t t = 0; t < threads && next_frame < cfg.stop.max_frames; ++t) {
        const std::uint64_t count =
            std::min<std::uint64_t>(kBlockFrames, cfg.stop.max_frames - next_frame);
        futs.push_back(std::async(std::launch::async, run_block, std::cref(code),
                                  std::cref(cfg), point, sigma, sigma2, next_frame, count,
                                  std::cref(caps)));
        counts.push_back(count);
        next_frame += count;
      }
      // accumulate strictly in block order; blocks past the stop point are
      // computed but discarded, so the result is thread-count independent
      for (std::size_t b = 0; b < futs.size(); ++b) {
        BlockAccum acc = futs[b].get();
        if (met) continue;
        pt.frames += acc.frames;
        for (std::size_t s = 0; s < caps.size(); ++s) {
          pt.stats[s].bit_errors += acc.stats[s].bit_errors;
          pt.stats[s].frame_errors += acc.stats[s].frame_errors;
          pt.stats[s].iter_sum += acc.stats[s].iter_sum;
        }
        met = true;
        for (const IterStats& st : pt.stats)
          met = met && st.frame_errors >= cfg.stop.target_frame_errors;
      }
    }

    for (IterStats& st : pt.stats) {
      st.ber = static_cast<double>(st.bit_errors) /
               (static_cast<double>(pt.frames) * static_cast<double>(code.n()));
      st.bler = static_cast<double>(st.frame_errors) / static_cast<double>(pt.frames);
      st.avg_iters = static_cast<double>(st.iter_sum) / static_cast<double>(pt.frames);
    }
    if (cfg.on_point) cfg.on_point(pt);
    report.points.push_back(std::move(pt));
  }
  return report;
}

}  // namespace qc
