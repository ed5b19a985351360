#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "parithlab/fq.hpp"

namespace parithlab {

// Dense univariate polynomial over Fq, coefficient of x^i at index i.
// Normalized: no trailing zeros (the zero polynomial is the empty vector).
using FqPoly = std::vector<FqElem>;

namespace poly {

FqPoly trim(FqPoly f);
int deg(const FqPoly& f);  // -1 for the zero polynomial
bool is_zero(const FqPoly& f);
FqPoly constant(const Fq& F, FqElem c);
FqPoly monomial(const Fq& F, int n);  // x^n

FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const Fq& F, const FqPoly& a, FqElem c);
FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b);
// Returns (quotient, remainder); b must be nonzero.
std::pair<FqPoly, FqPoly> divmod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly gcd(const Fq& F, FqPoly a, FqPoly b);  // monic gcd
FqPoly monic(const Fq& F, const FqPoly& a);
FqPoly derivative(const Fq& F, const FqPoly& a);
FqPoly powmod(const Fq& F, const FqPoly& base, std::uint64_t e, const FqPoly& m);
FqElem eval(const Fq& F, const FqPoly& a, FqElem x);

bool is_irreducible(const Fq& F, const FqPoly& f);

// Full factorization into monic irreducibles with multiplicities.
// Deterministic: internal randomness is seeded from the input.
std::vector<std::pair<FqPoly, int>> factor(const Fq& F, const FqPoly& f);

// Roots in F with multiplicities (from the degree-1 irreducible factors).
std::vector<std::pair<FqElem, int>> roots(const Fq& F, const FqPoly& f);

}  // namespace poly
}  // namespace parithlab
