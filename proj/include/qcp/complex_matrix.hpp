#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qcp/errors.hpp"

namespace qcp {

using cxd = std::complex<double>;
using ComplexVector = std::vector<cxd>;

// Dense complex matrix, row-major. Everything in this project is small
// (order tens), so the implementation favors clarity and determinism over
// blocked performance.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw ValidationError("matrix dimensions must be nonnegative");
  }

  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(const std::vector<double>& d);
  // Rows given as initializer-style nested vectors; used heavily in tests.
  static ComplexMatrix from_rows(const std::vector<std::vector<cxd>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cxd& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cxd& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  ComplexMatrix adjoint() const;

  ComplexVector column(int j) const;
  void set_column(int j, const ComplexVector& v);

  double max_abs() const;
  double frobenius_norm() const;

  // max |M - M^dagger| <= tol * max(1, max|M|)
  bool is_hermitian(double tol = 1e-12) const;
  // max |M^dagger M - I| <= tol
  bool is_unitary(double tol = 1e-10) const;

  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(cxd scalar) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cxd> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);
// Conjugate-linear in the first argument: sum conj(a_i) b_i.
cxd dot(const ComplexVector& a, const ComplexVector& b);
double vec_norm(const ComplexVector& v);
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);
// max_ij |A_ij - B_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors
};

// Cyclic Jacobi rotations; suited to the small Hermitian matrices used here.
HermitianEigen hermitian_eigensystem(const ComplexMatrix& h);

struct NormalEigen {
  std::vector<cxd> values;
  ComplexMatrix vectors;
};

// Diagonalizes a normal matrix (in practice: unitary) by solving the
// Hermitian problem for (M+M^dagger)/2 and refining degenerate subspaces
// with (M-M^dagger)/(2i).
NormalEigen normal_eigensystem(const ComplexMatrix& m);

struct PsdCheck {
  bool ok;
  double min_eigenvalue;
};

// ok iff min eigenvalue >= -tol * max(1, max|H|). Throws on non-Hermitian input.
PsdCheck psd_check(const ComplexMatrix& h, double tol);

// Moore-Penrose pseudoinverse. Hermitian inputs go through their
// eigendecomposition, everything else through the Gram route on M^dagger M.
ComplexMatrix pseudo_inverse(const ComplexMatrix& m);

// Hermitian PSD square root. Eigenvalues in [-1e-8, 0) * scale are clamped
// to zero; anything more negative is a validation error.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

// Pseudo-inverse of the PSD square root, from a single eigendecomposition.
// Chaining psd_sqrt into pseudo_inverse would turn rank noise eps into
// sqrt(eps)-sized spurious directions; the shared rank cutoff avoids that.
ComplexMatrix psd_sqrt_pinv(const ComplexMatrix& h);

}  // namespace qcp
