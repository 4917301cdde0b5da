#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qdecay {

using cplx = std::complex<double>;

// Dense complex matrix with fixed capacity 4x4, stored row major on the
// stack.  Everything in this project lives in dimension 2 or 4, so a
// heap-free value type keeps the channel/concurrence loops cheap.
class CMat {
 public:
  CMat() : rows_(0), cols_(0) {}
  CMat(int rows, int cols) : rows_(rows), cols_(cols) { a_.fill(cplx(0.0)); }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  CMat& operator+=(const CMat& o) {
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMat& operator*=(cplx z) {
    for (int i = 0; i < rows_ * cols_; ++i) a_[i] *= z;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, cplx z) { return a *= z; }
  friend CMat operator*(cplx z, CMat a) { return a *= z; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    CMat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  CMat adjoint() const {
    CMat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  CMat conjugate() const {
    CMat m(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) m.a_[i] = std::conj(a_[i]);
    return m;
  }

  CMat transpose() const {
    CMat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < rows_ * cols_; ++i) m = std::max(m, std::abs(a_[i]));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (int i = 0; i < rows_ * cols_; ++i) s += std::norm(a_[i]);
    return std::sqrt(s);
  }

  // (A + A^dag)/2; requires a square matrix.
  CMat hermitized() const {
    CMat m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
  }

  double hermiticity_deviation() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

 private:
  int rows_, cols_;
  std::array<cplx, 16> a_;
};

// Pauli matrix sigma_i for i in {1,2,3}.
CMat pauli(int i);

// sigma_2 (x) sigma_2, the two-qubit spin flip.  Real, symmetric,
// anti-diagonal with signs (-1, 1, 1, -1).
const CMat& spin_flip();

// F X F with F = spin_flip(), evaluated as an index permutation with signs
// instead of two matrix products.
CMat spin_flip_sandwich(const CMat& x);

// Kronecker product of two 2x2 matrices in the basis |00>,|01>,|10>,|11>.
CMat kron(const CMat& a, const CMat& b);

struct EigResult {
  std::vector<double> values;  // descending
  CMat vectors;                // columns are the matching eigenvectors
};

// Eigendecomposition of a Hermitian matrix (n <= 4) by cyclic complex
// Jacobi sweeps.  Convergence when the off-diagonal Frobenius norm drops
// below 1e-13.  Rejects matrices whose hermiticity deviation exceeds 1e-10.
EigResult hermitian_eig(const CMat& h);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-1e-8, 0) are treated as roundoff and clamped to zero;
// anything below -1e-8 raises a domain error.
CMat psd_sqrt(const CMat& h);

// Singular values of a square matrix (n <= 4), descending, computed by
// one-sided Jacobi column orthogonalization.  Used where sqrt(eigenvalue)
// of an explicitly squared matrix would lose half the working precision.
std::array<double, 4> singular_values(const CMat& a);

}  // namespace qdecay
