#include "parithlab/fq.hpp"

#include <array>

#include "parithlab/fqpoly.hpp"

namespace parithlab {
namespace {

inline std::uint32_t digit(FqElem a, int i) {
  return static_cast<std::uint32_t>((a >> (8 * i)) & 0xff);
}

inline FqElem pack(const std::array<std::uint32_t, Fq::kMaxDegree>& c, int d) {
  FqElem r = 0;
  for (int i = d - 1; i >= 0; --i) r = (r << 8) | (c[i] & 0xff);
  return r;
}

}  // namespace

Fq::Fq(std::uint32_t p, int d) : p_(p), d_(d) {
  if (p < 2 || p > 251) throw std::invalid_argument("Fq: p out of range");
  if (d < 1 || d > kMaxDegree)
    throw std::invalid_argument("Fq: extension degree out of range [1,8]");
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("Fq: p not prime");
  if (d_ == 1) return;
  // Lexicographically smallest monic irreducible of degree d over F_p,
  // ordered by (c_{d-1}, ..., c_0).
  Fq prime(p, 1);
  std::vector<std::uint64_t> counter(d, 0);
  for (;;) {
    FqPoly f(d + 1, 0);
    f[d] = 1;
    for (int i = 0; i < d; ++i) f[i] = counter[i];
    if (poly::is_irreducible(prime, f)) {
      mod_.assign(d, 0);
      for (int i = 0; i < d; ++i) mod_[i] = static_cast<std::uint32_t>(f[i]);
      return;
    }
    int i = 0;
    while (i < d && ++counter[i] == p) counter[i++] = 0;
    if (i == d) throw std::runtime_error("Fq: no irreducible found");
  }
}

std::uint64_t Fq::encode(FqElem a) const {
  std::uint64_t r = 0;
  for (int i = d_ - 1; i >= 0; --i) r = r * p_ + digit(a, i);
  return r;
}

FqElem Fq::decode(std::uint64_t idx) const {
  std::array<std::uint32_t, kMaxDegree> c{};
  for (int i = 0; i < d_; ++i) {
    c[i] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  if (idx != 0) throw std::invalid_argument("Fq::decode: index out of range");
  return pack(c, d_);
}

FqElem Fq::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<FqElem>(r);
}

FqElem Fq::add(FqElem a, FqElem b) const {
  if (d_ == 1) {
    std::uint32_t s = digit(a, 0) + digit(b, 0);
    return s >= p_ ? s - p_ : s;
  }
  std::array<std::uint32_t, kMaxDegree> c{};
  for (int i = 0; i < d_; ++i) {
    std::uint32_t s = digit(a, i) + digit(b, i);
    c[i] = s >= p_ ? s - p_ : s;
  }
  return pack(c, d_);
}

FqElem Fq::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem Fq::neg(FqElem a) const {
  if (d_ == 1) {
    std::uint32_t x = digit(a, 0);
    return x == 0 ? 0 : p_ - x;
  }
  std::array<std::uint32_t, kMaxDegree> c{};
  for (int i = 0; i < d_; ++i) {
    std::uint32_t x = digit(a, i);
    c[i] = x == 0 ? 0 : p_ - x;
  }
  return pack(c, d_);
}

FqElem Fq::mul(FqElem a, FqElem b) const {
  if (d_ == 1)
    return static_cast<FqElem>(static_cast<std::uint64_t>(digit(a, 0)) *
                               digit(b, 0) % p_);
  std::array<std::uint64_t, 2 * kMaxDegree> acc{};
  for (int i = 0; i < d_; ++i) {
    std::uint64_t ai = digit(a, i);
    if (ai == 0) continue;
    for (int j = 0; j < d_; ++j) acc[i + j] += ai * digit(b, j);
  }
  // Reduce by x^d = -(m_{d-1} x^{d-1} + ... + m_0).
  for (int i = 2 * d_ - 2; i >= d_; --i) {
    std::uint64_t v = acc[i] % p_;
    if (v == 0) continue;
    std::uint64_t vneg = p_ - v;
    for (int j = 0; j < d_; ++j) acc[i - d_ + j] += vneg * mod_[j];
  }
  std::array<std::uint32_t, kMaxDegree> c{};
  for (int i = 0; i < d_; ++i) c[i] = static_cast<std::uint32_t>(acc[i] % p_);
  return pack(c, d_);
}

FqElem Fq::pow(FqElem a, std::uint64_t e) const {
  FqElem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FqElem Fq::inv(FqElem a) const {
  if (a == 0) throw std::domain_error("Fq::inv of zero");
  std::uint64_t q = 1;
  for (int i = 0; i < d_; ++i) q *= p_;
  return pow(a, q - 2);
}

std::string Fq::to_string(FqElem a) const { return std::to_string(encode(a)); }

}  // namespace parithlab
