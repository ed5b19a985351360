#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parithlab {

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveData {
  long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::string label;        // informational
  long long conductor = 0;  // informational

  long long discriminant() const;
};

enum class Reduction { Good, MultiplicativeSplit, MultiplicativeNonsplit,
                       Additive };

Reduction reduction_type(const CurveData& e, std::uint32_t ell);

// Trace of Frobenius by exhaustive point counting: ell + 1 - #E(F_ell) for
// good reduction, ±1 for multiplicative (split/nonsplit), error on additive.
long long ap(const CurveData& e, std::uint32_t ell);

// Built-in table of minimal models of small-conductor curves.
const std::vector<CurveData>& curve_table();
const CurveData& curve_by_label(const std::string& label);

// Table curves with good supersingular reduction at p (a_p = 0; for p >= 5
// the Hasse bound makes a_p ≡ 0 mod p equivalent to a_p = 0).
std::vector<CurveData> supersingular_curves(std::uint32_t p);

}  // namespace parithlab
