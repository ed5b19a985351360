#pragma once

#include <string>
#include <vector>

#include "parithlab/manin.hpp"

namespace parithlab {

// Named Hecke operator.  Tl/Sl need ell prime to p*N; Diamond takes a unit
// mod N; Tp and Sp are the operators at the working prime p.
struct HeckeLabel {
  enum class Kind { Tl, Sl, Diamond, Tp, Sp };
  Kind kind = Kind::Tl;
  std::uint32_t ell = 0;  // ell for Tl/Sl, the unit for Diamond

  static HeckeLabel T(std::uint32_t ell) { return {Kind::Tl, ell}; }
  static HeckeLabel S(std::uint32_t ell) { return {Kind::Sl, ell}; }
  static HeckeLabel diamond(std::uint32_t u) { return {Kind::Diamond, u}; }
  static HeckeLabel Tp() { return {Kind::Tp, 0}; }
  static HeckeLabel Sp() { return {Kind::Sp, 0}; }

  std::string name() const;
};

// Merel's Heilbronn-type matrix set X_n: integral matrices of determinant n
// computing T_n on Manin symbols.
std::vector<IMat> heilbronn_merel(long long n);

// Matrix of the operator on the basis of the space (columns are images of
// basis vectors).  Results are cached on the space keyed by label name.
MatrixFq hecke(const HomologySpace& space, const HeckeLabel& label);

// Operator given by right multiplication with a single integral matrix.
// Symbols whose p-part degenerates are dropped when allow_drop is set and
// are an error otherwise.
MatrixFq symbol_operator(const HomologySpace& space,
                         const std::vector<IMat>& mats, bool allow_drop);

// Diamond operator <u>, induced by left multiplication with a lift of
// diag(u^{-1}, u) mod N trivial mod p: symbols scale by u, coefficients
// are untouched.
MatrixFq diamond_action(const HomologySpace& space, std::uint32_t u);

}  // namespace parithlab
