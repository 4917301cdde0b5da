#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdecay/ensembles.hpp"
#include "qdecay/errors.hpp"
#include "qdecay/quad.hpp"
#include "qdecay/special.hpp"

namespace qdecay {

namespace {

const double kQsMaxD = 1.0 - 1.0 / std::sqrt(3.0);

// K(m) written in terms of 1-m, so callers sitting close to the logarithmic
// endpoint can hand over the small complement without cancellation. Below
// 1e-12 the AGM gains nothing over the leading asymptote K ~ ln(4/sqrt(1-m)).
double elliptic_k_complement(double one_minus_m) {
  if (one_minus_m < 1e-12) return std::log(4.0) - 0.5 * std::log(one_minus_m);
  return elliptic_k(1.0 - one_minus_m);
}

}  // namespace

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size())
    throw std::invalid_argument("trapezoid: grid/values size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    acc += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
  return acc;
}

double DensityCurve::continuous_mass() const { return trapezoid(grid, values); }

double DensityCurve::total_mass() const {
  double acc = continuous_mass();
  for (const auto& [loc, w] : point_masses) {
    (void)loc;
    acc += w;
  }
  return acc;
}

void DensityCurve::validate() const {
  if (grid.size() < 2 || grid.size() != values.size())
    throw std::invalid_argument("DensityCurve: need matching grid/values, length >= 2");
  if (!(hi > lo)) throw std::invalid_argument("DensityCurve: domain must have lo < hi");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i + 1] > grid[i]))
      throw std::invalid_argument("DensityCurve: grid must ascend strictly");
  if (grid.front() < lo - 1e-12 || grid.back() > hi + 1e-12)
    throw std::invalid_argument("DensityCurve: grid leaves the stated domain");
  for (double v : values)
    if (!std::isfinite(v) || v < -1e-12)
      throw std::invalid_argument("DensityCurve: values must be finite and non-negative");
  for (const auto& [loc, w] : point_masses) {
    if (loc < lo - 1e-12 || loc > hi + 1e-12)
      throw std::invalid_argument("DensityCurve: point mass outside the domain");
    if (!(w >= 0.0 && w <= 1.0 + 1e-12))
      throw std::invalid_argument("DensityCurve: point-mass weight outside [0, 1]");
  }
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > 2e-3)
    throw std::invalid_argument("DensityCurve: total probability deviates from 1");
}

double p_c0(double c) {
  if (c < 0.0 || c > 1.0) throw std::domain_error("p_c0: concurrence must lie in [0, 1]");
  return 3.0 * c * std::sqrt(std::max(0.0, 1.0 - c * c));
}

double p_c0_cdf(double c) {
  if (c < 0.0 || c > 1.0) throw std::domain_error("p_c0_cdf: concurrence must lie in [0, 1]");
  const double t = std::max(0.0, 1.0 - c * c);
  return 1.0 - t * std::sqrt(t);
}

namespace {

double d_qs_density(double q_s) {
  const double om = 1.0 - q_s;
  const double rad =
      (q_s * q_s - 2.0 * q_s + 2.0) * (3.0 * q_s * q_s - 6.0 * q_s + 2.0);
  const double om7 = om * om * om * om * om * om * om;
  return 3.0 * q_s * (2.0 - q_s) * std::sqrt(std::max(0.0, rad)) / (4.0 * om7);
}

double ad_qs_density(double q_s) {
  if (q_s < 1e-3) {
    // The two closed-form terms cancel to O(q_s) near zero; the series of
    // their sum is accurate to ~1e-15 here.
    const double q2 = q_s * q_s;
    return q_s * (4.0 / 3.0 + q2 * (-12.0 / 5.0 + q2 * (24.0 / 7.0)));
  }
  const double q2 = q_s * q_s;
  const double onepq2 = 1.0 + q2;
  return (q2 - 1.0) / (2.0 * q_s * onepq2 * onepq2) +
         std::atan(q_s) / (2.0 * q2);
}

// Separation-point density for phase damping. With u = r/s and v = 1-u^2
// the conditional-theta elimination leaves
//   p(q_S) = 24 k (1+y^2) / (pi y^2) * I,
//   I = int_0^{1/2} ds int_{v_lo}^{v_hi} dv
//         s^3 v^2 K(m) / ( sqrt(1-4s^2(1-v)) sqrt((1-k^2 v)((1+k^2)v - 1))
//                          sqrt(1-v) ),
// where y = 1-q_S, k = (1-y^2)/(2y), v_lo = 1/(1+k^2),
// v_hi = min(1, 1/k^2), and 1-m = 4 s^2 v / (1-4s^2(1-v)). Both v-endpoints
// carry inverse-square-root factors, handled by the substitution rule. The
// density diverges logarithmically at k = 1 (q_S = 2-sqrt(2)), which is the
// conspicuous spike the histograms show near 0.59.
double pd_qs_density(double q_s) {
  const double y = 1.0 - q_s;
  const double k = (1.0 - y) * (1.0 + y) / (2.0 * y);
  if (k <= 0.0) return 0.0;
  const double k2 = k * k;
  const double v_lo = 1.0 / (1.0 + k2);
  const double v_hi = k >= 1.0 ? 1.0 / k2 : 1.0;
  if (!(v_hi > v_lo)) return 0.0;
  // The leading 24 folds the signed-difference invariant onto r >= 0:
  // joint_pd_sr carries the even signed-r density, counted twice here.
  const double pref = 24.0 * k * (1.0 + y * y) / (M_PI * y * y);

  const double outer_tol = std::max(1e-6 / pref, 1e-11);
  const double inner_tol = 0.25 * outer_tol;

  const auto outer = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double s2 = s * s;
    const auto inner = [&](double v) {
      const double omv = 1.0 - v;
      if (omv <= 0.0) return 0.0;
      const double den1 = 1.0 - 4.0 * s2 * omv;
      const double f1 = 1.0 - k2 * v;
      const double f2 = (1.0 + k2) * v - 1.0;
      if (den1 <= 0.0 || f1 <= 0.0 || f2 <= 0.0) return 0.0;
      const double mu = 4.0 * s2 * v / den1;
      const double kk = elliptic_k_complement(mu);
      return s2 * s * v * v * kk /
             (std::sqrt(den1) * std::sqrt(f1 * f2) * std::sqrt(omv));
    };
    return adaptive_quad_singular(inner, v_lo, v_hi, inner_tol, true, true);
  };
  return pref * adaptive_quad(outer, 0.0, 0.5, outer_tol);
}

}  // namespace

EsdDensityValue p_qs(ChannelKind kind, double q_s) {
  switch (kind) {
    case ChannelKind::Depolarizing:
      if (q_s < 0.0 || q_s > kQsMaxD + 1e-12)
        throw std::domain_error("p_qs: depolarizing domain is [0, 1-1/sqrt(3)]");
      return {d_qs_density(std::min(q_s, kQsMaxD)), 0.0};
    case ChannelKind::AmplitudeDamping:
      if (q_s <= 0.0 || q_s > 1.0)
        throw std::domain_error("p_qs: amplitude-damping domain is (0, 1]");
      return {ad_qs_density(q_s), (2.0 + M_PI) / 8.0};
    case ChannelKind::PhaseDamping:
      if (q_s < 0.0 || q_s >= 1.0)
        throw std::domain_error("p_qs: phase-damping domain is [0, 1)");
      return {pd_qs_density(q_s), 0.0};
  }
  throw internal_error("unhandled channel kind");
}

double joint_pd_sr(double s, double r) {
  if (r < 0.0 || s < r || s > 0.5) return 0.0;
  const double den = 1.0 - 4.0 * r * r;
  if (den <= 0.0) return 0.0;  // corner r = s = 1/2
  const double diff = s * s - r * r;
  if (diff <= 0.0) return 0.0;
  const double one_minus_m = 4.0 * diff / den;
  return 24.0 * diff / std::sqrt(den) * elliptic_k_complement(one_minus_m);
}

double joint_ad(double p11, double c0) {
  if (p11 < 0.0 || p11 > 1.0) return 0.0;
  if (c0 <= 0.0 || c0 >= 1.0) return 0.0;  // both edges carry zero density
  const double w = std::sqrt((1.0 - c0) * (1.0 + c0));
  const double two_p = 2.0 * p11;
  if (two_p > 1.0 + w) return 0.0;
  const double z = std::max(c0 * c0 / (1.0 + w), two_p);  // 1-w without cancellation
  if (z <= 0.0) return 0.0;
  return 3.0 * c0 * std::log((1.0 + w) / z);
}

namespace {

double d_p_c(double c, double q) {
  const double om2 = (1.0 - q) * (1.0 - q);
  const double c0 = (c + 0.5 * q * (2.0 - q)) / om2;
  if (c0 >= 1.0) return 0.0;
  return 3.0 * c0 * std::sqrt((1.0 - c0) * (1.0 + c0)) / om2;
}

double ad_p_c(double c, double q) {
  const double omq = 1.0 - q;
  const double cs = c / omq;
  if (cs >= 1.0) return 0.0;
  double hi = std::min(1.0, (1.0 - cs) / (2.0 * q));
  // Shrink to the support edge of joint_ad: f(p) = 1 + w - 2p is strictly
  // decreasing along the constraint line, so one bisection pins the edge.
  const auto edge_gap = [&](double p) {
    const double c0 = cs + 2.0 * p * q;
    const double w = std::sqrt(std::max(0.0, (1.0 - c0) * (1.0 + c0)));
    return 1.0 + w - 2.0 * p;
  };
  if (edge_gap(hi) < 0.0) {
    double lo = 0.0, top = hi;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + top);
      (edge_gap(mid) < 0.0 ? top : lo) = mid;
    }
    hi = lo;
  }
  if (hi <= 0.0) return 0.0;
  const auto f = [&](double p) { return joint_ad(p, cs + 2.0 * p * q); };
  return adaptive_quad(f, 0.0, hi, 1e-9) / omq;
}

// Each s-slice integrates 2 * joint_pd_sr over r with the weight
// 1/sqrt((r_hi^2 - r^2) (qt^2 r^2 - b)), i.e. inverse-square-root factors
// whose inner roots +-sqrt(b)/qt may be real or imaginary. Writing
// rho^2 = b/qt^2 (either sign), the range [max(rho, 0), r_hi] is split at
// the midpoint in r^2 and each half gets the substitution that flattens its
// own factor: below, w = ln(r + sqrt(r^2 - rho^2)) has dw = dr/sqrt(r^2 -
// rho^2) and stays well conditioned as rho -> 0, where the two lower roots
// pinch the contour; above, r = r_hi sin(phi) clears the root at r_hi. The
// pinch happens on the slice through s_star = c / root_gap and leaves an
// integrable logarithmic spike in the s-integrand, so the outer integral is
// split there and approaches the spike through the square-root rule.
double pd_p_c(double c, double q) {
  const double qt = q * (2.0 - q);
  const double y2 = (1.0 - q) * (1.0 - q);
  const double s_min = c / (2.0 * y2);
  if (s_min >= 0.5) return 0.0;

  const double inner_tol = 1e-9;
  const auto slice = [&](double s) {
    const double a = c + qt * s;
    const double r_hi = a / (2.0 - qt);
    if (r_hi <= 0.0) return 0.0;
    const double b = a * a - 4.0 * y2 * s * s;
    // Fold factor 2 on joint_pd_sr throughout: r is the folded invariant.
    // The floor on |rho| caps the length of the w-interval when an outer
    // node lands next to the pinch; it perturbs the weight only within a
    // band of width ~1e-28 around it.
    const double mag = std::max(std::sqrt(std::abs(b)) / qt, 1e-14 * r_hi);
    const double rho2 = std::copysign(mag * mag, b);
    if (rho2 >= r_hi * r_hi) return 0.0;
    const double r_start = rho2 > 0.0 ? std::sqrt(rho2) : 0.0;
    const double m2 = 0.5 * (r_start * r_start + r_hi * r_hi);
    const double r_mid = std::sqrt(m2);

    const double w_lo =
        std::log(r_start + std::sqrt(std::max(r_start * r_start - rho2, 0.0)));
    const double w_mid = std::log(r_mid + std::sqrt(m2 - rho2));
    const auto f_low = [&](double w) {
      const double ew = std::exp(w);
      const double r = 0.5 * (ew + rho2 / ew);
      const double fall = std::max(r_hi * r_hi - r * r, 0.0);
      if (fall <= 0.0 || r <= 0.0) return 0.0;
      return joint_pd_sr(s, r) / std::sqrt(fall);
    };
    const double low = adaptive_quad(f_low, w_lo, w_mid, inner_tol);

    const double phi_mid = std::asin(std::min(r_mid / r_hi, 1.0));
    const auto f_up = [&](double phi) {
      const double r = r_hi * std::sin(phi);
      return joint_pd_sr(s, r) / std::sqrt(r * r - rho2);
    };
    const double up = adaptive_quad(f_up, phi_mid, 0.5 * M_PI, inner_tol);

    const double coef = 2.0 * a / (M_PI * (2.0 - qt));
    return coef * 2.0 / qt * (low + up);
  };

  const double tol = 5e-7;
  const double root_gap = 2.0 * (1.0 - q) - qt;  // q^2 - 4q + 2
  const double s_star =
      root_gap > 0.0 ? c / root_gap : std::numeric_limits<double>::infinity();
  if (s_star > s_min && s_star < 0.5) {
    return adaptive_quad_singular(slice, s_min, s_star, 0.5 * tol, true, true) +
           adaptive_quad_singular(slice, s_star, 0.5, 0.5 * tol, true, false);
  }
  return adaptive_quad_singular(slice, s_min, 0.5, tol, true,
                                std::isfinite(s_star));
}

}  // namespace

double p_c(ChannelKind kind, double c, double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::domain_error("p_c: q must lie in [0, 1)");
  if (c < 0.0) throw std::domain_error("p_c: concurrence must be non-negative");
  if (c > max_concurrence(kind, q)) return 0.0;
  if (q == 0.0) return p_c0(std::min(c, 1.0));
  switch (kind) {
    case ChannelKind::Depolarizing: return d_p_c(c, q);
    case ChannelKind::AmplitudeDamping: return ad_p_c(c, q);
    case ChannelKind::PhaseDamping: return pd_p_c(c, q);
  }
  throw internal_error("unhandled channel kind");
}

double survival_from_p_c(ChannelKind kind, double q, double tol) {
  const double cm = max_concurrence(kind, q);
  if (cm <= 0.0) return 0.0;
  return adaptive_quad([&](double c) { return p_c(kind, c, q); }, 0.0, cm, tol);
}

DensityCurve esd_density_from_concurrence(ChannelKind kind,
                                          const std::vector<double>& grid) {
  if (grid.size() < 3)
    throw std::invalid_argument(
        "esd_density_from_concurrence: need at least 3 grid points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i + 1] > grid[i]))
      throw std::invalid_argument("esd_density_from_concurrence: grid must ascend");
  if (grid.front() < 0.0 || grid.back() >= 1.0)
    throw std::invalid_argument("esd_density_from_concurrence: grid must lie in [0, 1)");

  double tol = 1e-8;
  switch (kind) {
    case ChannelKind::Depolarizing: tol = 1e-10; break;
    case ChannelKind::AmplitudeDamping: tol = 1e-8; break;
    case ChannelKind::PhaseDamping: tol = 1e-5; break;
  }
  std::vector<double> survival(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    survival[i] = survival_from_p_c(kind, grid[i], tol);

  DensityCurve out;
  out.lo = grid.front();
  out.hi = grid.back();
  out.grid.assign(grid.begin() + 1, grid.end() - 1);
  out.values.resize(out.grid.size());
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    out.values[i - 1] = std::max(
        0.0, -(survival[i + 1] - survival[i - 1]) / (grid[i + 1] - grid[i - 1]));
  // The atom sits at the curve's own right end, not at the input grid's
  // back: the continuous part stops one point earlier than the input, and
  // an atom past it would leave the final interval's mass counted by
  // neither piece. Survival at the interior end point covers that strip.
  const double tail = survival[grid.size() - 2];
  if (tail > 1e-12) out.point_masses.emplace_back(out.grid.back(), tail);
  return out;
}

namespace {

double interp_curve(const DensityCurve& c, double x) {
  if (c.grid.empty() || x < c.grid.front() || x > c.grid.back()) return 0.0;
  const auto it = std::upper_bound(c.grid.begin(), c.grid.end(), x);
  if (it == c.grid.begin()) return c.values.front();
  if (it == c.grid.end()) return c.values.back();
  const std::size_t j = static_cast<std::size_t>(it - c.grid.begin());
  const double x0 = c.grid[j - 1], x1 = c.grid[j];
  const double t = (x - x0) / (x1 - x0);
  return (1.0 - t) * c.values[j - 1] + t * c.values[j];
}

}  // namespace

double mixed_scaling_fit(const DensityCurve& a, const DensityCurve& b) {
  if (a.grid.size() < 3 || b.grid.size() < 3)
    throw std::invalid_argument("mixed_scaling_fit: curves too short");
  if (a.continuous_mass() < 1e-6 || b.continuous_mass() < 1e-6)
    throw std::invalid_argument(
        "mixed_scaling_fit: a curve has no continuous mass to fit");

  const auto objective = [&](double alpha) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < a.grid.size(); ++i) {
      const double xm = 0.5 * (a.grid[i] + a.grid[i + 1]);
      const double am = 0.5 * (a.values[i] + a.values[i + 1]);
      const double diff = am - interp_curve(b, xm / alpha) / alpha;
      acc += diff * diff * (a.grid[i + 1] - a.grid[i]);
    }
    return acc;
  };

  double best_alpha = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (double alpha = 0.25; alpha <= 4.0 + 1e-9; alpha += 0.01) {
    const double v = objective(alpha);
    if (v < best) {
      best = v;
      best_alpha = alpha;
    }
  }
  // Golden-section refinement inside the winning scan cell.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_alpha - 0.01, hi = best_alpha + 0.01;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-5) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double ks_distance(std::vector<double> samples, const DensityCurve& analytic) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());

  // Cumulative trapezoid of the continuous part.
  std::vector<double> cum(analytic.grid.size(), 0.0);
  for (std::size_t i = 1; i < analytic.grid.size(); ++i)
    cum[i] = cum[i - 1] + 0.5 * (analytic.values[i] + analytic.values[i - 1]) *
                              (analytic.grid[i] - analytic.grid[i - 1]);

  const auto cdf = [&](double x, bool left_limit) {
    double f = 0.0;
    if (!analytic.grid.empty()) {
      if (x >= analytic.grid.back()) {
        f = cum.back();
      } else if (x > analytic.grid.front()) {
        const auto it =
            std::upper_bound(analytic.grid.begin(), analytic.grid.end(), x);
        const std::size_t j = static_cast<std::size_t>(it - analytic.grid.begin());
        const double x0 = analytic.grid[j - 1], x1 = analytic.grid[j];
        const double t = (x - x0) / (x1 - x0);
        const double v = (1.0 - t) * analytic.values[j - 1] + t * analytic.values[j];
        f = cum[j - 1] + 0.5 * (analytic.values[j - 1] + v) * (x - x0);
      }
    }
    for (const auto& [loc, w] : analytic.point_masses)
      if (left_limit ? loc < x : loc <= x) f += w;
    return f;
  };

  double dist = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    dist = std::max(dist, std::abs(cdf(x, true) - static_cast<double>(i) / n));
    dist = std::max(dist, std::abs(cdf(x, false) - static_cast<double>(j) / n));
    i = j;
  }
  return dist;
}

}  // namespace qdecay
