#include "parithlab/matrix.hpp"

#include <omp.h>

#include <stdexcept>

namespace parithlab {

MatrixFq MatrixFq::identity(const Fq& F, int n) {
  MatrixFq m(F, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, F.one());
  return m;
}

MatrixFq MatrixFq::operator+(const MatrixFq& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  MatrixFq r(F_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = F_.add(data_[i], o.data_[i]);
  return r;
}

MatrixFq MatrixFq::operator-(const MatrixFq& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sub: shape mismatch");
  MatrixFq r(F_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = F_.sub(data_[i], o.data_[i]);
  return r;
}

MatrixFq MatrixFq::scaled(FqElem c) const {
  MatrixFq r(F_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = F_.mul(data_[i], c);
  return r;
}

MatrixFq MatrixFq::transpose() const {
  MatrixFq r(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

MatrixFq MatrixFq::lift_to(const Fq& E) const {
  if (F_.degree() != 1 || E.p() != F_.p())
    throw std::invalid_argument("lift_to: need prime-field source, same p");
  MatrixFq r(E, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      r.set(i, j, E.from_prime_field(static_cast<std::uint32_t>(at(i, j))));
  return r;
}

std::vector<FqElem> MatrixFq::apply(const std::vector<FqElem>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("apply: shape mismatch");
  std::vector<FqElem> r(rows_, F_.zero());
  for (int i = 0; i < rows_; ++i) {
    FqElem acc = F_.zero();
    const FqElem* ri = row(i);
    for (int j = 0; j < cols_; ++j)
      if (ri[j] != 0 && v[j] != 0) acc = F_.add(acc, F_.mul(ri[j], v[j]));
    r[i] = acc;
  }
  return r;
}

bool MatrixFq::is_zero() const {
  for (FqElem v : data_)
    if (v != 0) return false;
  return true;
}

MatrixFq matmul_serial(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  const Fq& F = a.field();
  MatrixFq r(F, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      FqElem aik = a.at(i, k);
      if (aik == 0) continue;
      const FqElem* bk = b.row(k);
      FqElem* ri = r.row(i);
      for (int j = 0; j < b.cols(); ++j)
        if (bk[j] != 0) ri[j] = F.add(ri[j], F.mul(aik, bk[j]));
    }
  }
  return r;
}

MatrixFq matmul_parallel(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  const Fq& F = a.field();
  MatrixFq r(F, a.rows(), b.cols());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      FqElem aik = a.at(i, k);
      if (aik == 0) continue;
      const FqElem* bk = b.row(k);
      FqElem* ri = r.row(i);
      for (int j = 0; j < b.cols(); ++j)
        if (bk[j] != 0) ri[j] = F.add(ri[j], F.mul(aik, bk[j]));
    }
  }
  return r;
}

MatrixFq MatrixFq::operator*(const MatrixFq& o) const {
  return matmul_parallel(*this, o);
}

EchelonResult echelon(const MatrixFq& m) {
  const Fq& F = m.field();
  EchelonResult res;
  MatrixFq a = m;
  int nr = a.rows(), nc = a.cols();
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    // Leftmost-first pivot: first nonzero entry in column c at or below row r.
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (a.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < nc; ++j) {
        FqElem t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    FqElem inv = F.inv(a.at(r, c));
    for (int j = c; j < nc; ++j) a.set(r, j, F.mul(a.at(r, j), inv));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) {
      if (i == r) continue;
      FqElem f = a.at(i, c);
      if (f == 0) continue;
      FqElem fneg = F.neg(f);
      FqElem* rowi = a.row(i);
      const FqElem* rowr = a.row(r);
      for (int j = c; j < nc; ++j)
        if (rowr[j] != 0) rowi[j] = F.add(rowi[j], F.mul(fneg, rowr[j]));
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.rref = std::move(a);
  // Kernel basis from free columns.
  int nullity = nc - res.rank;
  MatrixFq ker(F, nc, nullity);
  std::vector<int> pivot_of_col(nc, -1);
  for (int i = 0; i < res.rank; ++i) pivot_of_col[res.pivot_cols[i]] = i;
  int kcol = 0;
  for (int c = 0; c < nc; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    ker.set(c, kcol, F.one());
    for (int pc = 0; pc < nc; ++pc) {
      int pr = pivot_of_col[pc];
      if (pr >= 0) ker.set(pc, kcol, F.neg(res.rref.at(pr, c)));
    }
    ++kcol;
  }
  res.kernel = std::move(ker);
  return res;
}

int rank_of(const MatrixFq& m) { return echelon(m).rank; }

MatrixFq column_space(const MatrixFq& m) {
  // Pivot columns of m give a basis of the column span.
  EchelonResult e = echelon(m);
  MatrixFq b(m.field(), m.rows(), e.rank);
  for (int k = 0; k < e.rank; ++k)
    for (int i = 0; i < m.rows(); ++i) b.set(i, k, m.at(i, e.pivot_cols[k]));
  return b;
}

MatrixFq solve(const MatrixFq& m, const MatrixFq& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const Fq& F = m.field();
  EchelonResult e = echelon(hstack(m, b));
  for (int c : e.pivot_cols)
    if (c >= m.cols()) throw std::runtime_error("solve: inconsistent system");
  MatrixFq x(F, m.cols(), b.cols());
  for (int k = 0; k < static_cast<int>(e.pivot_cols.size()); ++k) {
    int c = e.pivot_cols[k];
    for (int j = 0; j < b.cols(); ++j) x.set(c, j, e.rref.at(k, m.cols() + j));
  }
  return x;
}

MatrixFq inverse(const MatrixFq& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  EchelonResult e = echelon(hstack(m, MatrixFq::identity(m.field(), m.rows())));
  if (e.rank != m.rows() ||
      (e.rank > 0 && e.pivot_cols[e.rank - 1] >= m.cols()))
    throw std::runtime_error("inverse: singular matrix");
  MatrixFq inv(m.field(), m.rows(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j) inv.set(i, j, e.rref.at(i, m.cols() + j));
  return inv;
}

FqPoly charpoly(const MatrixFq& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: not square");
  const Fq& F = m.field();
  int n = m.rows();
  if (n == 0) return poly::constant(F, F.one());
  MatrixFq h = m;
  // Reduce to upper Hessenberg form by similarity transforms.
  for (int c = 0; c < n - 2; ++c) {
    int piv = -1;
    for (int i = c + 1; i < n; ++i)
      if (h.at(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != c + 1) {
      for (int j = 0; j < n; ++j) {
        FqElem t = h.at(c + 1, j); h.set(c + 1, j, h.at(piv, j)); h.set(piv, j, t);
      }
      for (int i = 0; i < n; ++i) {
        FqElem t = h.at(i, c + 1); h.set(i, c + 1, h.at(i, piv)); h.set(i, piv, t);
      }
    }
    FqElem inv = F.inv(h.at(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      FqElem f = F.mul(h.at(i, c), inv);
      if (f == 0) continue;
      FqElem fneg = F.neg(f);
      for (int j = 0; j < n; ++j) h.set(i, j, F.add(h.at(i, j), F.mul(fneg, h.at(c + 1, j))));
      for (int i2 = 0; i2 < n; ++i2) h.set(i2, c + 1, F.add(h.at(i2, c + 1), F.mul(f, h.at(i2, i))));
    }
  }
  // charpoly recurrence on Hessenberg matrices: p_k = charpoly of leading k x k.
  std::vector<FqPoly> p(n + 1);
  p[0] = poly::constant(F, F.one());
  for (int k = 1; k <= n; ++k) {
    // p_k(x) = (x - h[k-1][k-1]) p_{k-1}(x)
    //          - sum_{i=1}^{k-1} h[k-1-i][k-1] (prod subdiag) p_{k-1-i}(x)
    FqPoly xshift = {F.neg(h.at(k - 1, k - 1)), F.one()};
    FqPoly acc = poly::mul(F, xshift, p[k - 1]);
    FqElem prod = F.one();
    for (int i = 1; i <= k - 1; ++i) {
      prod = F.mul(prod, h.at(k - i, k - i - 1));
      if (prod == 0) break;
      FqElem coef = F.mul(h.at(k - 1 - i, k - 1), prod);
      if (coef != 0) acc = poly::sub(F, acc, poly::scale(F, p[k - 1 - i], coef));
    }
    p[k] = std::move(acc);
  }
  return p[n];
}

MatrixFq hstack(const MatrixFq& a, const MatrixFq& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: shape mismatch");
  MatrixFq r(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
  }
  return r;
}

MatrixFq vstack(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: shape mismatch");
  MatrixFq r(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(a.rows() + i, j, b.at(i, j));
  return r;
}

}  // namespace parithlab
