#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parithlab/gl2.hpp"
#include "parithlab/matrix.hpp"

namespace parithlab {

// Congruence level: Gamma_1(N) or Gamma_1(N) ∩ Gamma_0(p).
struct Level {
  std::uint32_t N = 3;
  bool with_p = false;
};

// Coefficient weight Sym^r(F^2)^dual with twist exponent a (mod p-1).
struct Weight {
  int r = 0;
  int a = 0;
};

// 2x2 integer matrix; actions on symbols and coefficients go through it.
struct IMat {
  long long a = 1, b = 0, c = 0, d = 1;

  long long det() const { return a * d - b * c; }
  IMat operator*(const IMat& o) const {
    return IMat{a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
  }
  IMat adjugate() const { return IMat{d, -b, -c, a}; }
  bool operator==(const IMat& o) const = default;
};

// SL2(Z) lift of a mod-M matrix with determinant ≡ 1 (mod M); exact
// determinant 1, entries congruent to the inputs mod M.
IMat lift_sl2z(long long a, long long b, long long c, long long d,
               long long M);

// Coefficient right action: Q|m = Q(m00 x + m01 y, m10 x + m11 y) with the
// entries reduced mod p.  A right monoid action for integral matrices.
SymVector coeff_apply(const Fq& F, const SymVector& q, const IMat& m);

// Coset symbols of the level inside SL2(Z): bottom-row pairs (c, d) mod N,
// and for with_p additionally the P^1(F_p) class of the bottom row.
struct SymbolTable {
  std::uint32_t N = 3;
  std::uint32_t p = 5;
  bool with_p = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<int> pair_index;  // N*N entries; -1 where not unimodular
  std::vector<IMat> lifts;      // one SL2(Z) lift per symbol

  int p1count() const { return with_p ? static_cast<int>(p) + 1 : 1; }
  int size() const { return static_cast<int>(pairs.size()) * p1count(); }
  int index(int pair_idx, int z) const { return pair_idx * p1count() + z; }

  // Symbol of a bottom row given by integers (drops to nullopt when the
  // row degenerates mod N or, for with_p, mod p).
  std::optional<int> from_row(long long c, long long d) const;
  // Right action by an integral matrix.
  std::optional<int> apply(int sym, const IMat& m) const;
  const IMat& lift(int sym) const { return lifts[sym]; }
};

SymbolTable build_symbol_table(std::uint32_t N, std::uint32_t p, bool with_p);

// Cusp classes: orbits of primitive vectors (a, c) mod M under the image of
// the congruence group, with (-a, -c) identified up to the sign (-1)^r.
// Classes forced to carry both signs are dead (their coefficient is 0).
struct CuspClasses {
  long long M = 1;
  int nclasses = 0;
  int live = 0;
  std::vector<int> cls;    // M*M entries; -1 where not primitive
  std::vector<int> sgn;    // sign relative to the class root
  std::vector<int> row;    // class id -> boundary row, or -1 if dead

  // Class/sign of an integer vector; nullopt when the class is dead.
  std::optional<std::pair<int, int>> lookup(long long a, long long c) const;
};

CuspClasses cusp_classes(const Level& level, std::uint32_t p, int r);

// Manin presentation of H_1 with the given coefficients: free module on
// (symbol, monomial) generators modulo x + x|sigma and x + x|tau + x|tau^2.
struct HomologySpace {
  Level level;
  Weight weight;
  Fq F;
  SymbolTable table;
  int ngens = 0;
  int dim = 0;
  std::vector<int> free_gens;  // generator index of each basis vector
  MatrixFq proj;               // ngens x dim: generator -> basis coordinates
  CuspClasses cusps;
  MatrixFq boundary;           // live cusp classes x dim
  MatrixFq cuspidal;           // dim x k, columns span ker(boundary)
  mutable std::map<std::string, MatrixFq> hecke_cache;

  int gen_index(int sym, int mono) const { return sym * (weight.r + 1) + mono; }
  std::pair<int, int> gen_decompose(int g) const {
    return {g / (weight.r + 1), g % (weight.r + 1)};
  }
  // out += scale * (coordinates of the symbol with coefficient q).
  void accumulate(std::vector<FqElem>& out, int sym, const SymVector& q,
                  FqElem scale) const;
};

HomologySpace build_space(const Level& level, const Weight& weight,
                          const Fq& F);

// Index of Gamma_1(N) in SL2(Z).
long long gamma1_index(std::uint32_t N);
// Cusp and genus counts from the classical formulas (independent of the
// presentation; used as a consistency oracle).
long long cusp_count_formula(const Level& level, std::uint32_t p);
long long genus_formula(const Level& level, std::uint32_t p);

}  // namespace parithlab
