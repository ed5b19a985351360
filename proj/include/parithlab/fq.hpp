#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace parithlab {

// Element of F_{p^d}, d <= 8, stored as packed base-p digits: coefficient of
// x^i in byte i.  The zero element is the value 0 for every d.
using FqElem = std::uint64_t;

/// Finite field F_{p^d} with a fixed monic irreducible modulus.  The modulus
/// is chosen deterministically (lexicographically smallest), so elements of
/// the same (p, d) compare across contexts.
class Fq {
public:
  static constexpr int kMaxDegree = 8;

  Fq() : p_(2), d_(1) {}
  Fq(std::uint32_t p, int d);

  std::uint32_t p() const { return p_; }
  int degree() const { return d_; }
  // Canonical integer encoding in [0, p^d): sum coeff_i * p^i.
  std::uint64_t encode(FqElem a) const;
  FqElem decode(std::uint64_t idx) const;

  FqElem zero() const { return 0; }
  FqElem one() const { return 1; }
  FqElem from_int(long long n) const;
  // Image of an F_p element (single digit) in this field.
  FqElem from_prime_field(std::uint32_t r) const { return r % p_; }

  bool is_zero(FqElem a) const { return a == 0; }

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem pow(FqElem a, std::uint64_t e) const;

  // Modulus coefficients m_0..m_{d-1} of x^d + m_{d-1} x^{d-1} + ... + m_0.
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  std::string to_string(FqElem a) const;

  bool operator==(const Fq& o) const {
    return p_ == o.p_ && d_ == o.d_;
  }

private:
  std::uint32_t p_;
  int d_;
  std::vector<std::uint32_t> mod_;
};

}  // namespace parithlab
