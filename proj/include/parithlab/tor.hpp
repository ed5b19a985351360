#pragma once

#include <utility>
#include <vector>

#include "parithlab/matrix.hpp"

namespace parithlab {

// Module over k[T,S]: commuting square matrices, S invertible.
struct TSModule {
  MatrixFq T;
  MatrixFq S;

  int dim() const { return T.rows(); }
  void validate() const;  // throws if TS != ST or S singular
};

// Koszul homology dimensions at a character (tau, sigma):
//   d2 = dim ker(T - tau) ∩ ker(S - sigma)
//   d0 = dim coker of (v, w) -> (T - tau) v + (S - sigma) w
//   d1 = middle homology; always d0 + d2.
struct TorProfile {
  int d0 = 0;
  int d1 = 0;
  int d2 = 0;
  bool operator==(const TorProfile& o) const {
    return d0 == o.d0 && d1 == o.d1 && d2 == o.d2;
  }
};

TorProfile koszul_tor(const TSModule& m, FqElem tau, FqElem sigma);

// Eigenvalues with generalized multiplicities, over the splitting field of
// the characteristic polynomial.  `field` has degree lcm of the factor
// degrees (capped at 8; hard error beyond); values live there.
struct EigenScan {
  Fq field;
  std::vector<std::pair<FqElem, int>> values;  // sorted by encode()
};

EigenScan eigen_scan(const MatrixFq& m);

// Smallest extension degree over which charpoly(m) splits.
int splitting_degree(const MatrixFq& m);

// Intersection of generalized eigenspaces: for each (op, scalar) in
// `constraints`, pass to the generalized kernel of (op - scalar) restricted
// to the running subspace.  Operators must commute and be square of the
// ambient dimension.  Returns a basis matrix (ambient_dim x subspace_dim).
MatrixFq localize(const std::vector<std::pair<MatrixFq, FqElem>>& constraints,
                  const Fq& F, int ambient_dim);

// Restriction of `op` to the column span of `basis`; throws if not stable.
MatrixFq restrict_to(const MatrixFq& op, const MatrixFq& basis);

// Basis of ker (m - lambda)^dim, as columns.
MatrixFq generalized_kernel(const MatrixFq& m, FqElem lambda);

}  // namespace parithlab
