#include "qc/galois.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qc {

namespace {

constexpr std::uint32_t kMaxExtensionDegree = 16;
constexpr std::uint32_t kMaxPrimeQ = 1u << 20;

bool is_prime(std::uint32_t x) {
  if (x < 2) return false;
  for (std::uint32_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

// Multiplicative order of x in GF(2)[x]/(poly), or 0 if x never cycles back
// to 1 (poly with zero constant term). poly_bits has c0 as LSB.
std::uint32_t order_of_x(std::uint32_t poly_bits, std::uint32_t m) {
  const std::uint32_t top = 1u << m;
  std::uint32_t b = 1;
  for (std::uint32_t i = 1; i < 2 * top; ++i) {
    b <<= 1;
    if (b & top) b ^= poly_bits;
    if (b == 1) return i;
    if (b == 0) return 0;
  }
  return 0;
}

// Lexicographically smallest primitive polynomial of degree m, comparing
// coefficient vectors (c0, c1, ..., cm). c0 = cm = 1 is forced; enumerating
// the free coefficients c1..c_{m-1} with c1 as the most significant counter
// digit visits candidates in that order.
std::uint32_t find_primitive_poly(std::uint32_t m) {
  if (m == 1) return 0b11;  // x + 1: GF(2), x = 1
  for (std::uint32_t k = 0; k < (1u << (m - 1)); ++k) {
    std::uint32_t poly = 1u | (1u << m);
    for (std::uint32_t i = 1; i < m; ++i)
      poly |= ((k >> (m - 1 - i)) & 1u) << i;
    if (order_of_x(poly, m) == (1u << m) - 1) return poly;
  }
  throw std::logic_error("no primitive polynomial of degree " + std::to_string(m));
}

std::vector<std::uint32_t> prime_factors(std::uint32_t x) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  b %= mod;
  while (e) {
    if (e & 1) r = r * b % mod;
    b = b * b % mod;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t smallest_primitive_root(std::uint32_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (std::uint32_t r : factors) {
      if (pow_mod(g, (p - 1) / r, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("no primitive root mod " + std::to_string(p));
}

}  // namespace

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  if (q >= 4 && (q & (q - 1)) == 0) {
    m_ = 0;
    for (std::uint32_t t = q; t > 1; t >>= 1) ++m_;
    if (m_ > kMaxExtensionDegree)
      throw std::invalid_argument("extension degree above " + std::to_string(kMaxExtensionDegree));
    p_ = 2;
    init_extension(find_primitive_poly(m_));
  } else {
    if (!is_prime(q))
      throw std::invalid_argument("field size " + std::to_string(q) + " is neither prime nor 2^m");
    if (q > kMaxPrimeQ)
      throw std::invalid_argument("prime field size above " + std::to_string(kMaxPrimeQ));
    p_ = q;
    m_ = 1;
    init_prime();
  }
}

Field::Field(std::uint32_t q, const std::vector<std::uint8_t>& modulus) : q_(q) {
  if (q < 4 || (q & (q - 1)) != 0)
    throw std::invalid_argument("explicit modulus requires q = 2^m with m >= 2");
  m_ = 0;
  for (std::uint32_t t = q; t > 1; t >>= 1) ++m_;
  if (m_ > kMaxExtensionDegree)
    throw std::invalid_argument("extension degree above " + std::to_string(kMaxExtensionDegree));
  p_ = 2;
  if (modulus.size() != m_ + 1 || modulus[0] != 1 || modulus[m_] != 1)
    throw std::invalid_argument("modulus must list coefficients c0..cm with c0 = cm = 1");
  std::uint32_t poly = 0;
  for (std::uint32_t i = 0; i <= m_; ++i) {
    if (modulus[i] > 1) throw std::invalid_argument("modulus coefficients must be 0 or 1");
    poly |= static_cast<std::uint32_t>(modulus[i]) << i;
  }
  if (order_of_x(poly, m_) != q - 1)
    throw std::invalid_argument("modulus is not primitive");
  init_extension(poly);
}

void Field::init_extension(std::uint32_t poly_bits) {
  modulus_.assign(m_ + 1, 0);
  for (std::uint32_t i = 0; i <= m_; ++i) modulus_[i] = (poly_bits >> i) & 1u;
  antilog_.resize(q_ - 1);
  log_.assign(q_, -1);
  std::uint32_t b = 1;
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    antilog_[e] = b;
    log_[b] = static_cast<std::int32_t>(e);
    b <<= 1;
    if (b & q_) b ^= poly_bits;
  }
}

void Field::init_prime() {
  const std::uint32_t g = smallest_primitive_root(p_);
  antilog_.resize(q_ - 1);
  log_.assign(q_, -1);
  std::uint64_t b = 1;
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    antilog_[e] = static_cast<std::uint32_t>(b);
    log_[b] = static_cast<std::int32_t>(e);
    b = b * g % p_;
  }
}

void Field::check(FieldElem a) const {
  if (a.q != q_)
    throw std::invalid_argument("element of GF(" + std::to_string(a.q) +
                                ") used in GF(" + std::to_string(q_) + ")");
  if (!a.is_zero() && (a.log < 0 || a.log >= static_cast<std::int32_t>(q_ - 1)))
    throw std::invalid_argument("exponent out of range");
}

FieldElem Field::alpha_pow(std::int64_t e) const {
  const std::int64_t L = q_ - 1;
  return {static_cast<std::int32_t>(((e % L) + L) % L), q_};
}

FieldElem Field::elem(std::int32_t log) const {
  FieldElem a{log, q_};
  check(a);
  return a;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  const std::uint32_t ra = rep(a), rb = rep(b);
  const std::uint32_t s = (p_ == 2) ? (ra ^ rb) : (ra + rb) % p_;
  return from_rep(s);
}

FieldElem Field::sub(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  const std::uint32_t ra = rep(a), rb = rep(b);
  const std::uint32_t s = (p_ == 2) ? (ra ^ rb) : (ra + p_ - rb) % p_;
  return from_rep(s);
}

FieldElem Field::neg(FieldElem a) const {
  check(a);
  if (p_ == 2 || a.is_zero()) return a;
  return from_rep(p_ - rep(a));
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  if (a.is_zero() || b.is_zero()) return zero();
  return {static_cast<std::int32_t>((a.log + b.log) % static_cast<std::int32_t>(q_ - 1)), q_};
}

FieldElem Field::inv(FieldElem a) const {
  check(a);
  if (a.is_zero()) throw std::invalid_argument("zero has no inverse");
  return {static_cast<std::int32_t>((q_ - 1 - a.log) % (q_ - 1)), q_};
}

FieldElem Field::pow(FieldElem a, std::int64_t k) const {
  check(a);
  if (a.is_zero()) {
    if (k == 0) throw std::invalid_argument("0^0 is undefined here");
    if (k < 0) throw std::invalid_argument("negative power of zero");
    return zero();
  }
  return alpha_pow(static_cast<std::int64_t>(a.log) * k);
}

std::uint32_t Field::element_order(FieldElem a) const {
  check(a);
  if (a.is_zero()) throw std::invalid_argument("order of zero is undefined");
  return (q_ - 1) / std::gcd<std::uint32_t>(static_cast<std::uint32_t>(a.log), q_ - 1);
}

std::uint32_t Field::rep(FieldElem a) const {
  check(a);
  return a.is_zero() ? 0 : antilog_[a.log];
}

FieldElem Field::from_rep(std::uint32_t r) const {
  if (r >= q_) throw std::invalid_argument("representation out of range");
  if (r == 0) return zero();
  return {log_[r], q_};
}

std::shared_ptr<const Field> build_field(std::uint32_t q) {
  return std::make_shared<const Field>(q);
}

}  // namespace qc
