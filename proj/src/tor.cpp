#include "parithlab/tor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parithlab {

void TSModule::validate() const {
  if (T.rows() != T.cols() || S.rows() != S.cols() || T.rows() != S.rows())
    throw std::invalid_argument("TSModule: shape mismatch");
  if (!(matmul_serial(T, S) == matmul_serial(S, T)))
    throw std::invalid_argument("TSModule: T and S do not commute");
  if (dim() > 0 && rank_of(S) != dim())
    throw std::invalid_argument("TSModule: S singular");
}

TorProfile koszul_tor(const TSModule& m, FqElem tau, FqElem sigma) {
  m.validate();
  const Fq& F = m.T.field();
  int n = m.dim();
  TorProfile prof;
  if (n == 0) return prof;
  MatrixFq A = m.T - MatrixFq::identity(F, n).scaled(tau);  // T - tau
  MatrixFq B = m.S - MatrixFq::identity(F, n).scaled(sigma);  // S - sigma
  // d2: one square system ker A ∩ ker B.
  prof.d2 = n - rank_of(vstack(A, B));
  // d0: coker of [A | B] : V^2 -> V, computed independently of d2.
  int rank_d1 = rank_of(hstack(A, B));
  prof.d0 = n - rank_d1;
  // Middle homology: ker d1 / im d2, with d2(v) = (B v, -A v).
  int ker_d1 = 2 * n - rank_d1;
  int rank_d2 = rank_of(vstack(B, A.scaled(F.neg(F.one()))));
  prof.d1 = ker_d1 - rank_d2;
  if (prof.d1 != prof.d0 + prof.d2)
    throw std::logic_error("koszul_tor: Euler characteristic violated");
  return prof;
}

int splitting_degree(const MatrixFq& m) {
  const Fq& F = m.field();
  FqPoly cp = charpoly(m);
  long long d = static_cast<long long>(F.degree());
  for (auto& [fac, mult] : poly::factor(F, cp)) {
    (void)mult;
    d = std::lcm(d, static_cast<long long>(F.degree()) * poly::deg(fac));
  }
  if (d > Fq::kMaxDegree)
    throw std::runtime_error("splitting_degree: extension degree exceeds 8");
  return static_cast<int>(d);
}

EigenScan eigen_scan(const MatrixFq& m) {
  const Fq& F = m.field();
  if (F.degree() != 1)
    throw std::invalid_argument("eigen_scan: input must be over a prime field");
  int d = splitting_degree(m);
  EigenScan out{Fq(F.p(), d), {}};
  MatrixFq ml = d == 1 ? m : m.lift_to(out.field);
  FqPoly cp = charpoly(ml);
  for (auto& [lam, mult] : poly::roots(out.field, cp))
    out.values.emplace_back(lam, mult);
  std::sort(out.values.begin(), out.values.end(),
            [&](const auto& a, const auto& b) {
              return out.field.encode(a.first) < out.field.encode(b.first);
            });
  int total = 0;
  for (auto& [lam, mult] : out.values) { (void)lam; total += mult; }
  if (total != m.rows())
    throw std::logic_error("eigen_scan: multiplicities do not sum to dim");
  return out;
}

MatrixFq generalized_kernel(const MatrixFq& m, FqElem lambda) {
  const Fq& F = m.field();
  int n = m.rows();
  MatrixFq A = m - MatrixFq::identity(F, n).scaled(lambda);
  // ker(A^m) stabilizes for m >= n, so square up to the next power of two.
  MatrixFq Ak = A;
  for (int k = 1; k < n; k *= 2) Ak = matmul_parallel(Ak, Ak);
  return echelon(Ak).kernel;
}

MatrixFq restrict_to(const MatrixFq& op, const MatrixFq& basis) {
  // op * basis = basis * R must be solvable; solve() throws otherwise.
  return solve(basis, matmul_parallel(op, basis));
}

MatrixFq localize(const std::vector<std::pair<MatrixFq, FqElem>>& constraints,
                  const Fq& F, int ambient_dim) {
  for (size_t i = 0; i < constraints.size(); ++i)
    for (size_t j = i + 1; j < constraints.size(); ++j)
      if (!(matmul_serial(constraints[i].first, constraints[j].first) ==
            matmul_serial(constraints[j].first, constraints[i].first)))
        throw std::invalid_argument("localize: operators do not commute");
  MatrixFq basis = MatrixFq::identity(F, ambient_dim);
  for (const auto& [op, lam] : constraints) {
    if (basis.cols() == 0) break;
    MatrixFq r = restrict_to(op, basis);
    basis = matmul_parallel(basis, generalized_kernel(r, lam));
  }
  return basis;
}

}  // namespace parithlab
