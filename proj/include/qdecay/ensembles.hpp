#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qdecay/channels.hpp"
#include "qdecay/entanglement.hpp"
#include "qdecay/qstate.hpp"

namespace qdecay {

// Tabulated probability density over [lo, hi], optionally with discrete
// atoms. The trapezoid mass of `values` plus the atom weights must add up
// to 1 (within 2e-3): separable probability sits in an atom at C = 0, and
// delta or censored separation-time mass in an atom at the right edge.
struct DensityCurve {
  std::vector<double> grid;    // ascending
  std::vector<double> values;  // same length as grid, non-negative
  std::vector<std::pair<double, double>> point_masses;  // (location, weight)
  double lo = 0.0;
  double hi = 1.0;

  double continuous_mass() const;  // trapezoid integral of values over grid
  double total_mass() const;       // continuous_mass + atom weights
  void validate() const;           // throws std::invalid_argument on violation
};

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values);

// Concurrence density of Haar-random pure two-qubit states, 3C sqrt(1-C^2),
// and its cumulative distribution 1-(1-C^2)^(3/2), both on C in [0, 1].
double p_c0(double c);
double p_c0_cdf(double c);

struct EsdDensityValue {
  double density = 0.0;       // continuous part at q_s
  double delta_at_one = 0.0;  // discrete weight at q_s = 1 (amplitude damping)
};

// Probability density of the separation point q_S over Haar-random pure
// states evolving under the channel pair. Depolarizing and amplitude
// damping are closed forms; the amplitude-damping result carries the
// states that never fully separate as weight (2+pi)/8 at q_S = 1. Phase
// damping is evaluated by reducing the (theta, s, r) pushforward to a 2-d
// quadrature over the (s, r) support (absolute tolerance 1e-6).
// Domains: depolarizing q_s in [0, 1-1/sqrt(3)]; amplitude damping (0, 1];
// phase damping [0, 1). Outside: std::domain_error.
EsdDensityValue p_qs(ChannelKind kind, double q_s);

// Joint density of the amplitude invariants over Haar states,
// 24 (s^2-r^2)/sqrt(1-4r^2) K((1-4s^2)/(1-4r^2)) on 0 <= r <= s <= 1/2;
// zero outside that support. This is the density of (s, r) with r the
// SIGNED product difference |psi00 psi11| - |psi01 psi10| (even in r, unit
// mass on |r| < s); the folded pair (s, |r|) produced by srd_invariants is
// distributed as twice this value, and the phase-damping reductions below
// carry that factor.
double joint_pd_sr(double s, double r);

// Joint density of (|psi11|^2, C0) over Haar states,
// 3 C0 log((1+w)/max(1-w, 2 p11)) with w = sqrt(1-C0^2), valid while
// 2 p11 <= 1+w and zero beyond.
double joint_ad(double p11, double c0);

// Continuous part of the concurrence density at channel strength q (both
// qubits noisy). Depolarizing is a closed form; amplitude damping
// integrates joint_ad along the line C = (1-q)(C0 - 2 p11 q); phase
// damping integrates joint_pd_sr over the (s, r) region selected by the
// evolved-concurrence constraint. Arguments above the channel's maximum
// concurrence return 0; q in [0, 1), C >= 0 required.
double p_c(ChannelKind kind, double c, double q);

// Probability that the evolved concurrence is still positive at strength q,
// computed as the integral of p_c over [0, max_concurrence] (tolerance tol).
double survival_from_p_c(ChannelKind kind, double q, double tol = 1e-7);

struct EnsembleStats {
  double mean = 0.0;
  double std = 0.0;                // population standard deviation
  double separable_fraction = 0.0; // fraction with concurrence <= 1e-12
  double max_seen = 0.0;
  std::size_t n = 0;
};

// Per-state evolved concurrences, index-aligned with the input list. The
// pure-state path uses the closed forms (concurrence_evolved /
// concurrence_single); the mixed path applies the Kraus map and computes
// the Wootters value. Work is split across `workers` threads by index, so
// the result is identical for every worker count.
std::vector<double> evolved_concurrences(ChannelKind kind, double q,
                                         const std::vector<PureState>& states,
                                         SideSpec side, int workers = 1);
std::vector<double> evolved_concurrences(ChannelKind kind, double q,
                                         const std::vector<DensityMatrix>& states,
                                         SideSpec side, int workers = 1);

EnsembleStats stats_from_values(const std::vector<double>& values);

EnsembleStats ensemble_stats(ChannelKind kind, double q,
                             const std::vector<PureState>& states, SideSpec side,
                             int workers = 1);
EnsembleStats ensemble_stats(ChannelKind kind, double q,
                             const std::vector<DensityMatrix>& states, SideSpec side,
                             int workers = 1);

// Separation-point sweep over a mixed-state list (esd_time_bisect per
// state, deterministic across worker counts). `finite` keeps input order.
struct EsdSampleSet {
  std::vector<double> finite;
  std::size_t asymptotic = 0;
  std::size_t separable = 0;
};
EsdSampleSet esd_samples_numeric(const std::vector<DensityMatrix>& states,
                                 ChannelKind kind, double tol = 1e-6,
                                 SideSpec side = SideSpec::BothQubits,
                                 int workers = 1);

// Histogram density over [lo, hi]. The continuous part is stored as a
// piecewise-linear curve whose trapezoid mass reproduces the bin counts
// exactly (bin-center values, flat extensions to the edges).
// `censored_at_hi` extra observations are recorded as an atom at hi (used
// for never-separating states); a constant sample list collapses to a
// single atom. Throws std::invalid_argument on an empty total sample set,
// bins < 2, or samples outside [lo, hi].
DensityCurve empirical_density(const std::vector<double>& samples, int bins,
                               double lo, double hi, std::size_t censored_at_hi = 0);

// Separation-time density recovered from the concurrence density: survival
// 1-S(q) integrated from p_c on each grid point, then differenced. Central
// differences need both neighbours, so the returned curve lives on the
// interior grid points; survival remaining at the curve's last point is
// reported as an atom there, keeping curve plus atom at unit mass.
// Requires an ascending grid of at least 3 points inside the channel's
// q-domain.
DensityCurve esd_density_from_concurrence(ChannelKind kind,
                                          const std::vector<double>& grid);

// Least-squares time-scaling factor between two separation-time densities:
// alpha minimizing the integral of (a(q) - b(q/alpha)/alpha)^2 over a's
// domain, via a coarse alpha scan refined by golden-section search. Only
// the continuous parts enter; two curves whose mass is entirely discrete
// are rejected (std::invalid_argument).
double mixed_scaling_fit(const DensityCurve& a, const DensityCurve& b);

// Kolmogorov-Smirnov distance between a sample set and a tabulated
// density. The analytic CDF accumulates the curve by trapezoid and jumps
// by the atom weights; atoms shared with censored samples are compared by
// their left and right limits.
double ks_distance(std::vector<double> samples, const DensityCurve& analytic);

}  // namespace qdecay
