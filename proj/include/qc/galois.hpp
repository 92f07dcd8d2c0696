#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace qc {

/// Element of GF(q), carried as a discrete log of the field's primitive
/// element alpha. `log == kZeroLog` marks the zero element; otherwise
/// `log` is an exponent in [0, q-2]. The field-size stamp lets arithmetic
/// reject elements from mismatched fields.
struct FieldElem {
  static constexpr std::int32_t kZeroLog = -1;

  std::int32_t log = kZeroLog;
  std::uint32_t q = 0;

  bool is_zero() const { return log == kZeroLog; }
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// GF(q) for q prime or q = 2^m, with log/antilog tables over a fixed
/// primitive element alpha. For extension fields alpha is the residue of x
/// modulo a primitive polynomial; for prime fields it is the smallest
/// positive primitive root. Immutable after construction.
class Field {
 public:
  /// Builds GF(q) with the default generator choice: for q = 2^m the
  /// lexicographically smallest primitive polynomial (coefficient vector
  /// ordered low-to-high), for prime q the smallest primitive root.
  explicit Field(std::uint32_t q);

  /// Builds GF(2^m) over a caller-supplied primitive polynomial, given as
  /// its coefficient list c0..cm (low-to-high, c0 = cm = 1).
  Field(std::uint32_t q, const std::vector<std::uint8_t>& modulus);

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return m_; }

  /// Coefficients c0..cm of the modulus polynomial; empty for prime fields.
  const std::vector<std::uint8_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return {FieldElem::kZeroLog, q_}; }
  FieldElem one() const { return {0, q_}; }
  FieldElem alpha() const { return {q_ > 2 ? 1 : 0, q_}; }
  FieldElem alpha_pow(std::int64_t e) const;
  FieldElem elem(std::int32_t log) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem pow(FieldElem a, std::int64_t k) const;

  /// Least k >= 1 with a^k = 1; divides q - 1. Rejects the zero element.
  std::uint32_t element_order(FieldElem a) const;

  /// Integer representation: polynomial bits (c0 = LSB) for extension
  /// fields, the residue in [0, p) for prime fields. rep(zero) = 0.
  std::uint32_t rep(FieldElem a) const;
  FieldElem from_rep(std::uint32_t r) const;

 private:
  void init_extension(std::uint32_t poly_bits);
  void init_prime();
  void check(FieldElem a) const;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::vector<std::uint8_t> modulus_;
  std::vector<std::int32_t> log_;      // rep -> exponent, log_[0] unused
  std::vector<std::uint32_t> antilog_; // exponent -> rep
};

/// Builds GF(q) with the default generator choice and shared ownership, the
/// form consumed by matrix constructions.
std::shared_ptr<const Field> build_field(std::uint32_t q);

}  // namespace qc
