#include "qcp/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcp {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<cxd>>& rows) {
  if (rows.empty()) throw ValidationError("from_rows: empty matrix");
  ComplexMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) throw ValidationError("from_rows: ragged rows");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexVector ComplexMatrix::column(int j) const {
  ComplexVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_column(int j, const ComplexVector& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cxd& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cxd& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  double worst = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j <= i; ++j) worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst <= tol * std::max(1.0, max_abs());
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (rows_ != cols_) return false;
  return max_abs_diff(adjoint() * (*this), identity(rows_)) <= tol;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix addition: shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix subtraction: shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ValidationError("matrix product: shape mismatch");
  ComplexMatrix m(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const cxd aik = (*this)(i, k);
      if (aik == cxd(0.0)) continue;
      for (int j = 0; j < rhs.cols_; ++j) m(i, j) += aik * rhs(k, j);
    }
  return m;
}

ComplexMatrix ComplexMatrix::operator*(cxd scalar) const {
  ComplexMatrix m(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * scalar;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cxd aij = a(i, j);
      if (aij == cxd(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw ValidationError("matvec: shape mismatch");
  ComplexVector out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    cxd s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

cxd dot(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw ValidationError("dot: size mismatch");
  cxd s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const cxd& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  ComplexMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Fix each eigenvector's global phase: largest-magnitude component made real
// positive. Keeps downstream constructions reproducible.
void normalize_column_phases(ComplexMatrix& v) {
  for (int j = 0; j < v.cols(); ++j) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best + 1e-15) {
        best = a;
        imax = i;
      }
    }
    if (best <= 0.0) continue;
    const cxd phase = v(imax, j) / best;
    for (int i = 0; i < v.rows(); ++i) v(i, j) /= phase;
  }
}

}  // namespace

HermitianEigen hermitian_eigensystem(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("hermitian_eigensystem: matrix not square");
  if (!h.is_hermitian(1e-12)) throw ValidationError("hermitian_eigensystem: matrix not Hermitian");
  const int n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize exactly so rounding in the input cannot bias the sweeps.
  for (int i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (int j = 0; j < i; ++j) {
      const cxd avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  const double conv_tol = 1e-15 * n * scale;

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > conv_tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double m = std::abs(a(p, q));
        if (m <= 1e-18 * scale) continue;
        const cxd w = a(p, q) / m;
        const double theta = 0.5 * std::atan2(2.0 * m, a(p, p).real() - a(q, q).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cxd sw = s * w;
        const cxd swc = s * std::conj(w);
        // A <- A U  (U embeds [[c, -s w],[s conj(w), c]] at (p,q))
        for (int i = 0; i < n; ++i) {
          const cxd aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + swc * aiq;
          a(i, q) = -sw * aip + c * aiq;
        }
        // A <- U^dagger A
        for (int j = 0; j < n; ++j) {
          const cxd apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + sw * aqj;
          a(q, j) = -swc * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const cxd vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + swc * viq;
          v(i, q) = -sw * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    out.vectors.set_column(j, v.column(order[j]));
  }
  normalize_column_phases(out.vectors);
  return out;
}

NormalEigen normal_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("normal_eigensystem: matrix not square");
  const int n = m.rows();
  const ComplexMatrix md = m.adjoint();
  const ComplexMatrix h = (m + md) * cxd(0.5, 0.0);
  const ComplexMatrix k = (m - md) * cxd(0.0, -0.5);

  HermitianEigen eh = hermitian_eigensystem(h);
  ComplexMatrix vecs = eh.vectors;
  const double group_tol = 1e-8 * std::max(1.0, h.max_abs());

  // Refine each degenerate eigenspace of H against K so that the combined
  // basis diagonalizes the (normal) input.
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && std::abs(eh.values[end] - eh.values[end - 1]) <= group_tol) ++end;
    const int g = end - start;
    if (g > 1) {
      ComplexMatrix block(g, g);
      std::vector<ComplexVector> cols(g);
      for (int j = 0; j < g; ++j) cols[j] = vecs.column(start + j);
      std::vector<ComplexVector> kcols(g);
      for (int j = 0; j < g; ++j) kcols[j] = matvec(k, cols[j]);
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) block(i, j) = dot(cols[i], kcols[j]);
      HermitianEigen eb = hermitian_eigensystem(block);
      for (int j = 0; j < g; ++j) {
        ComplexVector combo(n, 0.0);
        for (int l = 0; l < g; ++l) {
          const cxd w = eb.vectors(l, j);
          for (int i = 0; i < n; ++i) combo[i] += w * cols[l][i];
        }
        vecs.set_column(start + j, combo);
      }
    }
    start = end;
  }
  normalize_column_phases(vecs);

  NormalEigen out;
  out.vectors = vecs;
  out.values.resize(n);
  for (int j = 0; j < n; ++j) {
    const ComplexVector vj = vecs.column(j);
    out.values[j] = dot(vj, matvec(m, vj));
  }
  return out;
}

PsdCheck psd_check(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols() || !h.is_hermitian(1e-12)) throw ValidationError("psd_check: matrix not Hermitian");
  HermitianEigen e = hermitian_eigensystem(h);
  const double min_eig = e.values.empty() ? 0.0 : e.values.front();
  return {min_eig >= -tol * std::max(1.0, h.max_abs()), min_eig};
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& m) {
  if (m.empty()) return m;
  const double eps = 2.220446049250313e-16;
  if (m.rows() == m.cols() && m.is_hermitian(1e-12)) {
    HermitianEigen e = hermitian_eigensystem(m);
    double lmax = 0.0;
    for (double l : e.values) lmax = std::max(lmax, std::abs(l));
    const double cutoff = m.rows() * eps * std::max(lmax, 1e-300);
    ComplexMatrix out(m.rows(), m.cols());
    for (int j = 0; j < m.cols(); ++j) {
      if (std::abs(e.values[j]) <= cutoff) continue;
      const ComplexVector vj = e.vectors.column(j);
      const double inv = 1.0 / e.values[j];
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) += inv * vj[r] * std::conj(vj[c]);
    }
    return out;
  }
  // General case via the Hermitian Gram matrix M^dagger M.
  const ComplexMatrix gram = m.adjoint() * m;
  HermitianEigen e = hermitian_eigensystem(gram);
  double smax = 0.0;
  for (double l : e.values) smax = std::max(smax, std::sqrt(std::max(l, 0.0)));
  const double cutoff = std::max(m.rows(), m.cols()) * eps * std::max(smax, 1e-300);
  ComplexMatrix out(m.cols(), m.rows());
  for (int j = 0; j < gram.cols(); ++j) {
    const double sigma = std::sqrt(std::max(e.values[j], 0.0));
    if (sigma <= cutoff) continue;
    const ComplexVector vj = e.vectors.column(j);
    ComplexVector uj = matvec(m, vj);
    for (cxd& z : uj) z /= sigma;
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c) out(r, c) += (1.0 / sigma) * vj[r] * std::conj(uj[c]);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || !h.is_hermitian(1e-10)) throw ValidationError("psd_sqrt: matrix not Hermitian");
  HermitianEigen e = hermitian_eigensystem(h);
  const double scale = std::max(1.0, h.max_abs());
  ComplexMatrix out(h.rows(), h.cols());
  for (int j = 0; j < h.cols(); ++j) {
    double l = e.values[j];
    if (l < -1e-8 * scale)
      throw ValidationError("psd_sqrt: matrix has a materially negative eigenvalue " + std::to_string(l));
    if (l < 0.0) l = 0.0;
    const double root = std::sqrt(l);
    if (root == 0.0) continue;
    const ComplexVector vj = e.vectors.column(j);
    for (int r = 0; r < h.rows(); ++r)
      for (int c = 0; c < h.cols(); ++c) out(r, c) += root * vj[r] * std::conj(vj[c]);
  }
  // Exact Hermitian symmetrization of the accumulated sum.
  for (int i = 0; i < out.rows(); ++i) {
    out(i, i) = out(i, i).real();
    for (int j = 0; j < i; ++j) {
      const cxd avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

ComplexMatrix psd_sqrt_pinv(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || !h.is_hermitian(1e-10)) throw ValidationError("psd_sqrt_pinv: matrix not Hermitian");
  HermitianEigen e = hermitian_eigensystem(h);
  const double scale = std::max(1.0, h.max_abs());
  double lmax = 0.0;
  for (double l : e.values) lmax = std::max(lmax, l);
  const double cutoff = h.rows() * 2.220446049250313e-16 * std::max(lmax, 1e-300);
  ComplexMatrix out(h.rows(), h.cols());
  for (int j = 0; j < h.cols(); ++j) {
    const double l = e.values[j];
    if (l < -1e-8 * scale)
      throw ValidationError("psd_sqrt_pinv: matrix has a materially negative eigenvalue " + std::to_string(l));
    if (l <= cutoff) continue;
    const double inv_root = 1.0 / std::sqrt(l);
    const ComplexVector vj = e.vectors.column(j);
    for (int r = 0; r < h.rows(); ++r)
      for (int c = 0; c < h.cols(); ++c) out(r, c) += inv_root * vj[r] * std::conj(vj[c]);
  }
  return out;
}

}  // namespace qcp
