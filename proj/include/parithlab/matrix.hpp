#pragma once

#include <cstdint>
#include <vector>

#include "parithlab/fq.hpp"
#include "parithlab/fqpoly.hpp"

namespace parithlab {

/// Dense matrix over F_{p^d}.  Row-major; all arithmetic exact.
class MatrixFq {
public:
  MatrixFq() : rows_(0), cols_(0) {}
  MatrixFq(const Fq& F, int rows, int cols)
      : F_(F), rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, 0) {}

  static MatrixFq identity(const Fq& F, int n);

  const Fq& field() const { return F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  FqElem at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, FqElem v) { data_[static_cast<size_t>(i) * cols_ + j] = v; }
  FqElem* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
  const FqElem* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

  bool operator==(const MatrixFq& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  MatrixFq operator+(const MatrixFq& o) const;
  MatrixFq operator-(const MatrixFq& o) const;
  MatrixFq operator*(const MatrixFq& o) const;  // parallel kernel
  MatrixFq scaled(FqElem c) const;
  MatrixFq transpose() const;

  // Lift a prime-field matrix into an extension of the same characteristic.
  MatrixFq lift_to(const Fq& E) const;

  std::vector<FqElem> apply(const std::vector<FqElem>& v) const;  // M v

  bool is_zero() const;

private:
  Fq F_;
  int rows_, cols_;
  std::vector<FqElem> data_;
};

// Serial reference and OpenMP matrix products; results are identical.
MatrixFq matmul_serial(const MatrixFq& a, const MatrixFq& b);
MatrixFq matmul_parallel(const MatrixFq& a, const MatrixFq& b);

struct EchelonResult {
  int rank = 0;
  MatrixFq rref;                 // reduced row echelon form
  std::vector<int> pivot_cols;   // one per rank
  MatrixFq kernel;               // cols x nullity, columns span ker(m . x = 0)
};

// Reduced echelon form with deterministic leftmost-first pivoting.
EchelonResult echelon(const MatrixFq& m);

int rank_of(const MatrixFq& m);

// Basis of the column span, as a cols' <= cols matrix (columns independent).
MatrixFq column_space(const MatrixFq& m);

// Solve m * x = b for all columns of b; throws if inconsistent.
MatrixFq solve(const MatrixFq& m, const MatrixFq& b);

// Invert a square matrix; throws if singular.
MatrixFq inverse(const MatrixFq& m);

// Characteristic polynomial via Hessenberg reduction, monic of degree n.
FqPoly charpoly(const MatrixFq& m);

// Horizontal / vertical concatenation.
MatrixFq hstack(const MatrixFq& a, const MatrixFq& b);
MatrixFq vstack(const MatrixFq& a, const MatrixFq& b);

}  // namespace parithlab
