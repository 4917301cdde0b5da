#pragma once

#include <cmath>
#include <utility>

#include "qdecay/errors.hpp"

namespace qdecay {

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
// Kronrod abscissae (positive half, descending) and weights; the Gauss
// weights apply to nodes 1, 3, 5 and the centre.
inline constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
inline void gauss_kronrod_panel(const F& f, double a, double b, double& kronrod,
                                double& err) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(mid - h * kKronrodX[i]);
    fk[14 - i] = f(mid + h * kKronrodX[i]);
  }
  fk[7] = f(mid);
  double gk = 0.0, g = 0.0;
  for (int i = 0; i < 7; ++i) gk += kKronrodW[i] * (fk[i] + fk[14 - i]);
  gk += kKronrodW[7] * fk[7];
  // Gauss nodes sit at Kronrod indices 1, 3, 5 (and mirrors) plus centre.
  for (int i = 0; i < 3; ++i) g += kGaussW[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
  g += kGaussW[3] * fk[7];
  kronrod = gk * h;
  err = std::abs((gk - g) * h);
}

// Shared across one adaptive_quad call tree.  The panel budget bounds the
// total work: a non-integrable spike otherwise drives an exponential panel
// cascade toward the depth cap, since the per-panel tolerance shrinks by
// half at each level while neighbouring panels keep just missing it.
struct QuadProgress {
  double worst_err = 0.0;
  long panels = 0;
};

template <class F>
double adaptive_quad_impl(const F& f, double a, double b, double tol, int depth,
                          QuadProgress* progress) {
  double val, err;
  gauss_kronrod_panel(f, a, b, val, err);
  ++progress->panels;
  if (err <= tol || err <= 1e-16 * std::abs(val)) return val;
  if (depth >= 48 || progress->panels > 200000) {
    // Too deep or too much total work to keep splitting; report the best
    // estimate upward.  The caller at depth 0 turns the accumulated bound
    // into an accuracy error.
    progress->worst_err = std::max(progress->worst_err, err);
    return val;
  }
  const double mid = 0.5 * (a + b);
  return adaptive_quad_impl(f, a, mid, 0.5 * tol, depth + 1, progress) +
         adaptive_quad_impl(f, mid, b, 0.5 * tol, depth + 1, progress);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance
// tol, by recursive bisection.  Throws accuracy_error (carrying the best
// estimate) if the recursion bottoms out before the tolerance is met.
template <class F>
double adaptive_quad(const F& f, double a, double b, double tol) {
  if (!(b >= a)) throw std::invalid_argument("adaptive_quad: requires b >= a");
  if (a == b) return 0.0;
  detail::QuadProgress progress;
  const double v = detail::adaptive_quad_impl(f, a, b, tol, 0, &progress);
  if (progress.worst_err > tol)
    throw accuracy_error("adaptive_quad: tolerance not reached", v,
                         progress.worst_err);
  return v;
}

// Same, but with an inverse-square-root style singularity allowed at either
// endpoint.  A singular endpoint is regularized by the substitution
// x = a + u^2 (resp. x = b - u^2), which maps 1/sqrt(x-a) integrands onto
// smooth ones.  The interval is split in the middle when both ends are
// flagged.
template <class F>
double adaptive_quad_singular(const F& f, double a, double b, double tol,
                              bool singular_left, bool singular_right) {
  if (!(b >= a))
    throw std::invalid_argument("adaptive_quad_singular: requires b >= a");
  if (a == b) return 0.0;
  if (!singular_left && !singular_right) return adaptive_quad(f, a, b, tol);
  if (singular_left && singular_right) {
    const double mid = 0.5 * (a + b);
    return adaptive_quad_singular(f, a, mid, 0.5 * tol, true, false) +
           adaptive_quad_singular(f, mid, b, 0.5 * tol, false, true);
  }
  if (singular_left) {
    auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
    return adaptive_quad(g, 0.0, std::sqrt(b - a), tol);
  }
  auto g = [&](double u) { return 2.0 * u * f(b - u * u); };
  return adaptive_quad(g, 0.0, std::sqrt(b - a), tol);
}

}  // namespace qdecay
