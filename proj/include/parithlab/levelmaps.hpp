#pragma once

#include <utility>
#include <vector>

#include "parithlab/heckeop.hpp"
#include "parithlab/manin.hpp"

namespace parithlab {

// Point of P^1(Q): num/den with den >= 0; (1, 0) is infinity.
struct Rat {
  long long num = 0;
  long long den = 1;
};
Rat rat(long long num, long long den);

// Matrices M_k in SL2(Z) with {infinity, x} = sum_k M_k {0, infinity}
// (continued-fraction convergents).
std::vector<IMat> path_from_infinity(const Rat& x);

// Coordinates in the space basis of the modular symbol {from, to}
// (trivial coefficients; the space must have r = 0).
std::vector<FqElem> symbols_of_path(const HomologySpace& space,
                                    const Rat& from, const Rat& to);

enum class DegVariant { One, P };

// Pushforwards H_1(Gamma_1(N) ∩ Gamma_0(p)) -> H_1(Gamma_1(N)) induced by
// tau -> tau and tau -> p tau.
MatrixFq degeneracy(const HomologySpace& dst, const HomologySpace& src,
                    DegVariant variant);

// Transfers H_1(Gamma_1(N)) -> H_1(Gamma_1(N) ∩ Gamma_0(p)) for the same two
// inclusions.
MatrixFq transfer(const HomologySpace& dst, const HomologySpace& src,
                  DegVariant variant);

// The equivariant isomorphism Sym^{p-1} -> sum-zero functions inverse:
// unique up to scalar; mapped as matrix from the delta-function coordinates
// (basis e_i = delta_{z_i} - delta_{z_0}, i = 1..p) to monomial coordinates.
MatrixFq steinberg_intertwiner(const Fq& F);

// Shapiro splitting H_1(level Np, trivial) -> H_1(N, trivial) ⊕
// H_1(N, Sym^{p-1}); blocks stored separately, full() stacks them.
struct ShapiroMap {
  MatrixFq to_triv;
  MatrixFq to_sym;
  MatrixFq full() const { return vstack(to_triv, to_sym); }
};

ShapiroMap shapiro(const HomologySpace& space_np,
                   const HomologySpace& space_triv,
                   const HomologySpace& space_sym);

// phi~ = degeneracy(p) ∘ shapiro^{-1} restricted to the Sym-summand.  On
// this presentation (relative homology of the compactified curve) the map
// is surjective onto everything but possibly a boundary line: the image
// must contain the cuspidal subspace and any cokernel must be Eisenstein
// (both asserted against the target space).
MatrixFq phi_tilde(const ShapiroMap& sh, const MatrixFq& deg_p,
                   const HomologySpace& target);

// psi~ = -(Sym-component of shapiro ∘ transfer(p)); injective (asserted).
MatrixFq psi_tilde(const ShapiroMap& sh, const MatrixFq& transfer_p);

// U = coker(psi~) and V = ker(phi~) with the data needed to induce
// operators from H_1(N, Sym^{p-1}).
struct HasseModules {
  MatrixFq psi;     // dsym x dtriv
  MatrixFq phi;     // dtriv x dsym
  MatrixFq piU;     // dimU x dsym, quotient projection
  MatrixFq iotaU;   // dsym x dimU, section with piU * iotaU = id
  MatrixFq Vbasis;  // dsym x dimV

  int dimU() const { return piU.rows(); }
  int dimV() const { return Vbasis.cols(); }
};

HasseModules hasse_modules(const MatrixFq& psi, const MatrixFq& phi);

// Operators on H_1(N, Sym^{p-1}) induced on U and V; equivariance asserted.
MatrixFq induce_on_U(const HasseModules& h, const MatrixFq& op);
MatrixFq induce_on_V(const HasseModules& h, const MatrixFq& op);

}  // namespace parithlab
