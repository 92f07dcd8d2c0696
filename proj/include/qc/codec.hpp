#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qc/binary_matrix.hpp"
#include "qc/dispersion.hpp"

namespace qc {

struct DminBound {
  enum class Tag {
    kGammaPlus1,      // ZM-free regular array, odd column weight
    kGammaPlus2Even,  // ZM-free regular array, even column weight
    kGammaWithZms,    // at most one ZM per column block
  };
  std::uint32_t value = 0;
  Tag tag = Tag::kGammaPlus1;
};

/// A binary linear code given by the null space of a parity-check matrix.
/// Construction computes the reduced parity-check form (rank, systematic
/// positions) and the Tanner adjacency used by the decoders.
class LinearCode {
 public:
  LinearCode(BinaryMatrix h, const CpmArray* source);

  const BinaryMatrix& h() const { return h_; }
  std::size_t n() const { return h_.cols(); }
  std::size_t rank() const { return pivot_cols_.size(); }
  std::size_t k() const { return n() - rank(); }
  double rate() const { return static_cast<double>(k()) / static_cast<double>(n()); }
  const WeightHist& col_weight_profile() const { return col_profile_; }
  const WeightHist& row_weight_profile() const { return row_profile_; }
  DminBound dmin_lower_bound() const { return dmin_; }

  const std::vector<std::uint32_t>& info_positions() const { return info_cols_; }

  // Tanner adjacency, edges grouped by check.
  std::size_t edge_count() const { return edge_var_.size(); }
  std::span<const std::uint32_t> check_edges(std::size_t c) const {
    return {edge_var_.data() + chk_start_[c], chk_start_[c + 1] - chk_start_[c]};
  }
  std::span<const std::uint32_t> var_edges(std::size_t v) const {
    return {var_edges_.data() + var_start_[v], var_start_[v + 1] - var_start_[v]};
  }
  const std::vector<std::uint32_t>& chk_start() const { return chk_start_; }
  const std::vector<std::uint32_t>& edge_vars() const { return edge_var_; }
  const std::vector<std::uint32_t>& edge_checks() const { return edge_chk_; }
  std::uint32_t var_degree(std::size_t v) const { return var_start_[v + 1] - var_start_[v]; }
  std::uint32_t max_check_degree() const { return max_check_degree_; }

  const PackedMatrix& reduced_rows() const { return rref_; }
  const std::vector<std::uint32_t>& pivot_cols() const { return pivot_cols_; }

 private:
  BinaryMatrix h_;
  PackedMatrix rref_;
  std::vector<std::uint32_t> pivot_cols_;
  std::vector<std::uint32_t> info_cols_;
  WeightHist col_profile_;
  WeightHist row_profile_;
  DminBound dmin_;
  std::vector<std::uint32_t> chk_start_;
  std::vector<std::uint32_t> edge_var_;
  std::vector<std::uint32_t> edge_chk_;
  std::vector<std::uint32_t> var_start_;
  std::vector<std::uint32_t> var_edges_;
  std::uint32_t max_check_degree_ = 0;
};

/// Derives the code of the null space of h. When the source grid is given,
/// the minimum-distance bound comes from its block structure; otherwise it
/// falls back to minimum column weight + 1.
LinearCode make_code(BinaryMatrix h, const CpmArray* source = nullptr);

/// Systematic encoding: message bits land verbatim on the non-pivot columns
/// of the reduced parity-check form, pivot columns carry the parity.
std::vector<std::uint8_t> encode(const LinearCode& code, std::span<const std::uint8_t> message);

/// True iff h * v = 0 over GF(2).
bool is_codeword(const LinearCode& code, std::span<const std::uint8_t> v);

struct SpaResult {
  std::vector<std::uint8_t> hard;
  std::uint32_t iterations = 0;
  bool converged = false;
};

/// Log-domain sum-product decoding with the exact tanh check-node rule,
/// message magnitudes clamped at +/-30. Positive LLR favors bit 0. Stops as
/// soon as the syndrome is zero; non-convergence is reported, not thrown.
SpaResult spa_decode(const LinearCode& code, std::span<const double> llr,
                     std::uint32_t max_iters);

/// Min-sum variant of the check-node update; same conventions as spa_decode.
SpaResult min_sum_decode(const LinearCode& code, std::span<const double> llr,
                         std::uint32_t max_iters);

struct OsmlgdResult {
  std::vector<std::uint8_t> estimate;
  std::uint32_t flipped = 0;
};

/// One-step majority-logic decoding: flip a bit iff more than half of its
/// checks fail on the received word. With an RC-constrained parity-check
/// matrix of minimum column weight g this corrects any floor(g/2) errors.
OsmlgdResult osmlgd_decode(const LinearCode& code, std::span<const std::uint8_t> hard);

enum class DecoderKind { kSpa, kMinSum, kOsmlgd };

struct StopRule {
  std::uint64_t max_frames = 1'000'000;
  std::uint64_t target_frame_errors = 100;
};

struct SimConfig {
  DecoderKind decoder = DecoderKind::kSpa;
  std::vector<double> ebno_db;
  std::uint64_t seed = 1;
  std::uint32_t max_iters = 50;
  /// Extra iteration caps to report from the same decoding pass; each entry
  /// yields the statistics the decoder would produce with that cap. Empty
  /// means {max_iters}.
  std::vector<std::uint32_t> snapshots;
  StopRule stop;
  bool all_zero = true;    // transmit the zero codeword (valid by linearity)
  bool noiseless = false;  // clean channel, LLR = +/-clamp
  std::uint32_t threads = 0;  // 0 = hardware concurrency
  std::function<void(const struct SimPoint&)> on_point;  // progress hook
};

struct IterStats {
  std::uint32_t iter_cap = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t iter_sum = 0;
  double ber = 0.0;
  double bler = 0.0;
  double avg_iters = 0.0;
};

struct SimPoint {
  double ebno_db = 0.0;
  std::uint64_t frames = 0;
  std::vector<IterStats> stats;  // one entry per snapshot cap
};

struct SimReport {
  SimConfig config;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<SimPoint> points;
};

/// Seeded BPSK/AWGN Monte-Carlo sweep. Frames are fanned out over worker
/// threads in fixed-size blocks with per-frame RNG streams derived from
/// (seed, point, frame); results are accumulated in block order, so the
/// report is bit-identical for a given config regardless of thread count.
SimReport awgn_simulate(const LinearCode& code, const SimConfig& cfg);

}  // namespace qc
