#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parithlab/manin.hpp"
#include "parithlab/tor.hpp"

namespace parithlab {

// One simultaneous generalized eigenspace of a weight space: eigenvalues of
// T and S at p together with a basis of the block (over the extraction
// field, ambient dimension = space dimension).
struct Occurrence {
  Weight weight;
  FqElem tau = 0;    // T-at-p eigenvalue
  FqElem sigma = 0;  // S-at-p eigenvalue
  int mult = 0;
  MatrixFq basis;
};

// A system of Hecke eigenvalues away from p, with everywhere it occurs on
// the computed weight grid.
struct Eigensystem {
  // (ell, (t_ell, s_ell)) sorted by ell.
  std::vector<std::pair<std::uint32_t, std::pair<FqElem, FqElem>>> away;
  std::vector<Occurrence> occurrences;
  bool eisenstein = false;  // occurs in the boundary module of some weight
  std::string id;

  // Eigenvalue pair for a given ell; throws if absent.
  std::pair<FqElem, FqElem> at(std::uint32_t ell) const;
};

struct EigenData {
  Fq field;                         // shared splitting field of all operators
  std::vector<std::uint32_t> ells;  // primes used, coprime to pN
  std::vector<Eigensystem> systems;
};

// Primes ell <= bound with ell coprime to p*N.
std::vector<std::uint32_t> hecke_primes(std::uint32_t p, std::uint32_t N,
                                        std::uint32_t bound);

// Simultaneous generalized eigenspace decomposition of all spaces under
// {T_ell, S_ell : ell in ells} together with T and S at p, merged across
// weights by equality of the away-from-p eigenvalue data.  All spaces must
// share (p, N) and be defined over the prime field.
EigenData extract(const std::vector<const HomologySpace*>& spaces,
                  const std::vector<std::uint32_t>& ells);

// Simultaneous generalized eigenspace multiset of a commuting family over
// the prime field: (eigenvalue tuple in op order, multiplicity), sorted.
// E must contain all eigenvalues (error otherwise).
std::vector<std::pair<std::vector<FqElem>, int>> joint_spectrum(
    const std::vector<MatrixFq>& ops, const Fq& E);

// Dimension of degree-0 homology (coinvariants of the coefficient module
// under the image of the level group mod p): 1 for r = 0, else 0.  Computed
// from the sigma/tau generator relations, not assumed.
int h0_dimension(const Fq& F, int r);

// Local (at p) shape attached to one occurrence, per the Serre-weight
// classification.
enum class ShapeKind { Supersingular, OrdinaryPS, Steinberg };
enum class Ramification { Peu, Tres, Undetermined };

struct LocalShape {
  ShapeKind kind = ShapeKind::OrdinaryPS;
  int r = 0;
  int a = 0;            // twist exponent of the occurrence
  FqElem tau = 0;
  FqElem sigma = 0;
  FqElem b = 0;         // a square root of sigma, if one exists in the field
  FqElem lambda = 0;    // tau / b (0 when no root exists in the field)
  bool b_in_field = false;
  Ramification ram = Ramification::Undetermined;
};

// Classify one occurrence.  `weight0_computed` states whether the twist-a
// weight-0 space was part of the grid (needed to settle peu/tres for
// Steinberg shapes read off weight p-1).
LocalShape classify_local(const Fq& F, const Eigensystem& es,
                          const Occurrence& occ, bool weight0_computed);

// Square root in F, if any.
bool sqrt_in_field(const Fq& F, FqElem a, FqElem& root);

// Smooth representation selector for profiles and predictions.
struct RepSpec {
  enum class Kind { Pi, Steinberg, Trivial };
  Kind kind = Kind::Pi;
  int r = 0;        // Pi only
  FqElem lambda = 0;  // Pi only
  int a = 0;        // twist exponent of chi = omega^a unr(b)
  FqElem b = 1;

  std::string name(const Fq& F) const;
};

// Expected nonzero p-arithmetic degrees for (rep, eigensystem), from the
// Serre-weight / socle classification alone (independent of the Tor
// computation).  p1 = p - 1 of the working prime.
std::vector<int> predict(const Fq& F, const RepSpec& rep,
                         const Eigensystem& es, int p1);

}  // namespace parithlab
