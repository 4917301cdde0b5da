#include "qdecay/mat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdecay/errors.hpp"

namespace qdecay {

CMat pauli(int i) {
  CMat s(2, 2);
  switch (i) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = cplx(0.0, -1.0);
      s(1, 0) = cplx(0.0, 1.0);
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

const CMat& spin_flip() {
  static const CMat f = [] {
    CMat m(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return f;
}

CMat spin_flip_sandwich(const CMat& x) {
  // (F X F)_{ij} = f_i f_j X_{3-i,3-j} with f = (-1, 1, 1, -1).
  static const double f[4] = {-1.0, 1.0, 1.0, -1.0};
  CMat r(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = f[i] * f[j] * x(3 - i, 3 - j);
  return r;
}

CMat kron(const CMat& a, const CMat& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw std::invalid_argument("kron: expected two 2x2 factors");
  CMat k(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) k(2 * i + p, 2 * j + q) = a(i, j) * b(p, q);
  return k;
}

namespace {

double off_diagonal_frobenius(const CMat& m, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const CMat& h) {
  const int n = h.rows();
  if (n < 1 || n > 4 || h.cols() != n)
    throw std::invalid_argument("hermitian_eig: expected a square matrix of dimension <= 4");
  if (h.hermiticity_deviation() > 1e-10)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

  CMat a = h.hermitized();
  CMat v = CMat::identity(n);

  // Cyclic complex Jacobi.  Each rotation zeroes one off-diagonal pair
  // a_{pq}; the 2x2 problem is made real by pulling out the phase of a_{pq}.
  // The stop is relative to the matrix scale and sits at machine level:
  // eigenvalue error propagates through sqrt, where a leftover delta on a
  // zero eigenvalue turns into a sqrt(delta)-sized leak (psd_sqrt feeds the
  // concurrence path, which must stay at 1e-9 against the closed forms).
  const double off_tol = 1e-15 * std::max(h.max_abs(), 1e-300);
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_diagonal_frobenius(a, n) >= off_tol) {
    if (++sweep > kMaxSweeps)
      throw accuracy_error("hermitian_eig: Jacobi sweeps did not converge",
                           std::real(a(0, 0)), off_diagonal_frobenius(a, n));
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx u = apq / mag;  // e^{i phi}
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Columns transform as [p q] <- [p q] * [[c, s*u], [-s*conj(u), c]]
        // applied from the right to A and V, and from the left (adjoint) to A.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(u) * akq;
          a(k, q) = s * u * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * u * aqk;
          a(q, k) = s * std::conj(u) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(u) * vkq;
          v(k, q) = s * u * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::real(a(i, i)) > std::real(a(j, j)); });

  EigResult r;
  r.values.resize(n);
  r.vectors = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    r.values[j] = std::real(a(order[j], order[j]));
    for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[j]);
  }
  return r;
}

CMat psd_sqrt(const CMat& h) {
  EigResult e = hermitian_eig(h);
  const int n = h.rows();
  CMat s(n, n);
  std::array<double, 4> root{};
  // Eigenvalues at noise level are structural zeros (rank-deficient inputs
  // are routine here). They must be zeroed before the square root: sqrt
  // turns a 1e-16 residue into a 1e-8 component along a spurious direction,
  // which is exactly the scale the concurrence pipeline cannot afford.
  const double zero_clamp =
      1e-13 * std::max({std::abs(e.values.front()), std::abs(e.values.back()), 1e-300});
  for (int i = 0; i < n; ++i) {
    double lam = e.values[i];
    if (lam < -1e-8)
      throw std::domain_error("psd_sqrt: matrix has a significantly negative eigenvalue");
    if (lam < zero_clamp) lam = 0.0;
    root[i] = std::sqrt(lam);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += e.vectors(i, k) * root[k] * std::conj(e.vectors(j, k));
      s(i, j) = acc;
    }
  return s.hermitized();
}

std::array<double, 4> singular_values(const CMat& m) {
  const int n = m.rows();
  if (n < 1 || n > 4 || m.cols() != n)
    throw std::invalid_argument("singular_values: expected a square matrix of dimension <= 4");

  // One-sided Jacobi: rotate column pairs until all are mutually orthogonal;
  // the singular values are then the column norms.  Unlike forming A^dag A,
  // small singular values come out with absolute error O(eps * ||A||) rather
  // than O(sqrt(eps) * ||A||).
  std::array<std::array<cplx, 4>, 4> col{};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) col[j][i] = m(i, j);

  constexpr int kMaxSweeps = 60;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (int i = 0; i < n; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double mag = std::abs(gamma);
        if (mag <= 1e-32 * scale * scale ||
            mag <= 1e-16 * std::sqrt(alpha * beta))
          continue;
        rotated = true;
        const cplx u = gamma / mag;
        const double tau = (beta - alpha) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const cplx bp = col[p][i];
          const cplx bq = col[q][i];
          col[p][i] = c * bp - s * std::conj(u) * bq;
          col[q][i] = s * u * bp + c * bq;
        }
      }
    }
    if (!rotated) break;
  }

  std::array<double, 4> sv{};
  for (int j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) s2 += std::norm(col[j][i]);
    sv[j] = std::sqrt(s2);
  }
  std::sort(sv.begin(), sv.begin() + n, std::greater<double>());
  return sv;
}

}  // namespace qdecay
