#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parithlab/fq.hpp"

namespace parithlab {

using BigInt = boost::multiprecision::cpp_int;

// Element of Z[1/p]: value a * p^e with p ∤ a, or a = 0 (then e = 0).
struct PRat {
  BigInt a;
  int e = 0;

  bool is_zero() const { return a == 0; }
  bool operator==(const PRat& o) const { return a == o.a && e == o.e; }
};

PRat prat(std::uint32_t p, BigInt n, int e = 0);  // normalizes
PRat prat_add(std::uint32_t p, const PRat& x, const PRat& y);
PRat prat_sub(std::uint32_t p, const PRat& x, const PRat& y);
PRat prat_mul(std::uint32_t p, const PRat& x, const PRat& y);
PRat prat_neg(const PRat& x);
// p-adic valuation; throws on zero.
int prat_val(const PRat& x);
bool prat_integral(const PRat& x);  // lies in Z, i.e. valuation >= 0
// Value mod p, requires integrality.
std::uint32_t prat_mod_p(std::uint32_t p, const PRat& x);

// Element of GL_2(Q_p) with entries in Z[1/p].  Indices m[row][col].
struct GL2Elt {
  std::uint32_t p = 2;
  PRat m[2][2];

  static GL2Elt from_ints(std::uint32_t p, long long a, long long b,
                          long long c, long long d);
  static GL2Elt identity(std::uint32_t p);
  static GL2Elt alpha(std::uint32_t p);   // diag(1, p)
  static GL2Elt beta(std::uint32_t p);    // p * identity
  static GL2Elt w(std::uint32_t p);       // [[0,1],[1,0]]

  PRat det() const;
  GL2Elt operator*(const GL2Elt& o) const;
  // Inverse within Z[1/p] entries; requires det = ±p^k.
  GL2Elt inverse() const;
  bool operator==(const GL2Elt& o) const;
  std::string to_string() const;
};

// Membership tests (K = GL2(Z_p), I = Iwahori, G+ = integral entries).
bool in_K(const GL2Elt& g);
bool in_I(const GL2Elt& g);
bool in_Gplus(const GL2Elt& g);
bool in_Gminus(const GL2Elt& g);  // inverse has integral entries

// Entries mod p (requires G+) / entries of the inverse mod p (requires G-).
// The latter avoids materializing g^{-1}, whose determinant unit need not
// be ±1 within Z[1/p].
std::array<std::array<std::uint32_t, 2>, 2> reduce_mod_p(const GL2Elt& g);
std::array<std::array<std::uint32_t, 2>, 2> reduce_inverse_mod_p(const GL2Elt& g);

// Point of P^1(F_p): label j in [0, p) is (j : 1); label p is (1 : 0).
using P1Point = int;
// Projective class of (c, d) mod p; not both may reduce to zero.
P1Point p1_label(std::uint32_t p, std::uint32_t c, std::uint32_t d);

enum class SubgroupTag { K, I };

// Canonical form of a right coset Kg or Ig: the matrix [[p^m, u],[0, p^n]]
// with 0 <= u < p^n of finite base-p expansion; tag I adds the P^1(F_p)
// label (bottom row mod p) of the residual K-part g * h^{-1}.
struct CosetRep {
  SubgroupTag tag = SubgroupTag::K;
  int m = 0;
  int n = 0;
  PRat u;
  P1Point p1 = 0;  // only meaningful for tag I

  bool operator==(const CosetRep& o) const {
    return tag == o.tag && m == o.m && n == o.n && u == o.u && p1 == o.p1;
  }
  bool operator<(const CosetRep& o) const;
  GL2Elt matrix(std::uint32_t p) const;  // a representative of the coset
};

CosetRep canonicalize(const GL2Elt& g, SubgroupTag tag);

// g = x * b with x in SL2(Z) (so in K) and b upper-triangular.
std::pair<GL2Elt, GL2Elt> iwasawa(const GL2Elt& g);

// Left I-coset representatives of K: [[1,0],[j,1]] for j < p, then w.
std::vector<GL2Elt> cosets_K_mod_I(std::uint32_t p);

// Homogeneous polynomial of degree r in x, y over F: coeffs[i] is the
// coefficient of x^{r-i} y^i.  Models Sym^r(k^2) and, via the evaluation
// pairing, Sym^r(k^2)^dual as polynomial functions.
struct SymVector {
  int r = 0;
  std::vector<FqElem> coeffs;

  static SymVector zero(const Fq& F, int r) {
    return SymVector{r, std::vector<FqElem>(r + 1, F.zero())};
  }
  // e* = x^r (the paper's distinguished vector at r = p-1).
  static SymVector estar(const Fq& F, int r);
  bool operator==(const SymVector& o) const = default;
  bool is_zero() const;
};

enum class ActMode { NaturalOnSym, DualOnSymDual };

// Natural mode (g in G+): substitute (x, y) by the columns of g mod p.
// Dual mode (g in G-): precompose the polynomial function with g^{-1} mod p.
SymVector act_sym(const Fq& F, const GL2Elt& g, const SymVector& v, ActMode mode);

// Q(x, y) at a point of P^1 (evaluation at (j, 1) or (1, 0)).
FqElem sym_eval_p1(const Fq& F, const SymVector& v, P1Point pt);

}  // namespace parithlab
