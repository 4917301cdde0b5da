#include "qdecay/qstate.hpp"

#include <cmath>
#include <stdexcept>

#include "qdecay/errors.hpp"

namespace qdecay {

double PureState::norm2() const {
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

PureState PureState::normalized(const std::array<cplx, 4>& a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  if (s <= 0.0)
    throw std::invalid_argument("PureState: cannot normalize the zero vector");
  PureState psi;
  const double inv = 1.0 / std::sqrt(s);
  for (int i = 0; i < 4; ++i) psi.amp[i] = a[i] * inv;
  return psi;
}

CMat PureState::projector() const {
  CMat p(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) = amp[i] * std::conj(amp[j]);
  return p;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  DensityMatrix rho;
  rho.mat = psi.projector();
  return rho;
}

DensityMatrix DensityMatrix::from_matrix(const CMat& m) {
  DensityMatrix rho;
  rho.mat = m;
  rho.validate();
  return rho;
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::norm(mat(i, j));
  return s;
}

void DensityMatrix::validate() const {
  if (mat.rows() != 4 || mat.cols() != 4)
    throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix");
  if (mat.hermiticity_deviation() > 1e-10)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat.trace() - cplx(1.0)) > 1e-10)
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  EigResult e = hermitian_eig(mat.hermitized());
  if (e.values.back() < -1e-9)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

SrdInvariants srd_invariants(const PureState& psi) {
  const cplx a = psi[0] * psi[3];  // psi00 psi11
  const cplx b = psi[1] * psi[2];  // psi01 psi10
  SrdInvariants inv;
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  inv.s = ma + mb;
  inv.r = std::abs(ma - mb);
  inv.d = 2.0 * std::sqrt(std::max(0.0, inv.s * inv.s - inv.r * inv.r));
  inv.c0 = 2.0 * std::abs(a - b);
  if (ma == 0.0 || mb == 0.0) {
    inv.theta = 0.0;
  } else {
    double t = std::arg(a) - std::arg(b);
    t = std::fmod(t, 2.0 * M_PI);
    if (t < 0.0) t += 2.0 * M_PI;
    inv.theta = t;
  }
  return inv;
}

namespace {

// 4x4 matrix of i.i.d. standard complex Gaussian entries.
CMat ginibre(CounterRng& rng) {
  CMat g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double re, im;
      rng.normal_pair(re, im);
      g(i, j) = cplx(re, im);
    }
  return g;
}

// Modified Gram-Schmidt QR, returning Q only.  The R factor produced this
// way has positive diagonal, which is the convention under which Q of a
// Ginibre matrix is Haar distributed.
CMat mgs_q(const CMat& g) {
  std::array<std::array<cplx, 4>, 4> col{};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) col[j][i] = g(i, j);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (int i = 0; i < 4; ++i) proj += std::conj(col[k][i]) * col[j][i];
      for (int i = 0; i < 4; ++i) col[j][i] -= proj * col[k][i];
    }
    double n2 = 0.0;
    for (int i = 0; i < 4; ++i) n2 += std::norm(col[j][i]);
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < 4; ++i) col[j][i] *= inv;
  }
  CMat q(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) q(i, j) = col[j][i];
  return q;
}

DensityMatrix normalize_to_density(const CMat& w) {
  const double tr = std::real(w.trace());
  DensityMatrix rho;
  rho.mat = (w * cplx(1.0 / tr)).hermitized();
  return rho;
}

}  // namespace

PureState draw_haar_pure(SeedSpec seed) {
  CounterRng rng(seed);
  std::array<cplx, 4> a;
  for (int i = 0; i < 4; ++i) {
    double re, im;
    rng.normal_pair(re, im);
    a[i] = cplx(re, im);
  }
  return PureState::normalized(a);
}

DensityMatrix draw_hs_mixed(SeedSpec seed) {
  CounterRng rng(seed);
  const CMat g = ginibre(rng);
  return normalize_to_density(g * g.adjoint());
}

DensityMatrix draw_bures_mixed(SeedSpec seed) {
  CounterRng rng(seed);
  const CMat g = ginibre(rng);
  const CMat u = mgs_q(ginibre(rng));
  CMat iu = CMat::identity(4);
  iu += u;
  const CMat w = iu * (g * g.adjoint()) * iu.adjoint();
  return normalize_to_density(w);
}

CMat draw_haar_unitary(SeedSpec seed) {
  CounterRng rng(seed);
  return mgs_q(ginibre(rng));
}

std::vector<PureState> sample_haar_pure(SeedSpec seed, std::size_t n) {
  std::vector<PureState> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(draw_haar_pure({seed.seed, seed.stream + i}));
  return out;
}

std::vector<DensityMatrix> sample_hs_mixed(SeedSpec seed, std::size_t n) {
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(draw_hs_mixed({seed.seed, seed.stream + i}));
  return out;
}

std::vector<DensityMatrix> sample_bures_mixed(SeedSpec seed, std::size_t n) {
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(draw_bures_mixed({seed.seed, seed.stream + i}));
  return out;
}

}  // namespace qdecay
