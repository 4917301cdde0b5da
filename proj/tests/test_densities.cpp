#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdecay/ensembles.hpp"
#include "qdecay/quad.hpp"
#include "testutil.hpp"

using namespace qdecay;
using std::numbers::pi;

namespace {

// Exact survival under double depolarizing noise: C(q) > 0 iff
// C0 > q(2-q) / (2(1-q)^2), so S(q) = 1 - cdf(threshold). Everything here
// comes from the initial-concurrence distribution alone, which makes it an
// independent check on the q_S density and on survival_from_p_c.
double depolarizing_survival_exact(double q) {
  const double thr = q * (2.0 - q) / (2.0 * (1.0 - q) * (1.0 - q));
  if (thr >= 1.0) return 0.0;
  return 1.0 - p_c0_cdf(thr);
}

// Finite-strength concurrences of a fixed Haar ensemble, reused by the
// Monte Carlo cross-checks below.
std::vector<double> mc_values(ChannelKind kind, double q, std::size_t n) {
  const auto states = sample_haar_pure({404, 0}, n);
  return evolved_concurrences(kind, q, states, SideSpec::BothQubits);
}

double mc_bin_density(const std::vector<double>& values, double c, double halfwidth) {
  std::size_t hits = 0;
  for (double v : values)
    if (v >= c - halfwidth && v < c + halfwidth) ++hits;
  return static_cast<double>(hits) /
         (2.0 * halfwidth * static_cast<double>(values.size()));
}

}  // namespace

TEST_CASE("initial concurrence density and cdf") {
  CHECK(p_c0(0.0) == 0.0);
  CHECK(p_c0(1.0) == doctest::Approx(0.0));
  CHECK(p_c0(0.6) == doctest::Approx(3.0 * 0.6 * 0.8).epsilon(1e-15));
  CHECK(p_c0_cdf(0.0) == 0.0);
  CHECK(p_c0_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-15));

  // cdf' = density, checked by central differences.
  for (double c : {0.2, 0.5, 0.9}) {
    const double h = 1e-6;
    const double fd = (p_c0_cdf(c + h) - p_c0_cdf(c - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(p_c0(c)).epsilon(1e-8));
  }

  const double mean =
      adaptive_quad([](double c) { return c * p_c0(c); }, 0.0, 1.0, 1e-12);
  CHECK(mean == doctest::Approx(3.0 * pi / 16.0).epsilon(1e-11));
}

TEST_CASE("depolarizing separation density matches the exact survival") {
  // p(q_S) = -dS/dq with S known in closed form; central differences at
  // interior points pin the quadrature-free branch to 1e-6.
  for (double q : {0.05, 0.15, 0.25, 0.35}) {
    const double h = 1e-5;
    const double fd =
        (depolarizing_survival_exact(q - h) - depolarizing_survival_exact(q + h)) /
        (2.0 * h);
    CHECK(p_qs(ChannelKind::Depolarizing, q).density ==
          doctest::Approx(fd).epsilon(2e-6));
  }

  const double qmax = qs_domain_max(ChannelKind::Depolarizing);
  const double mass = adaptive_quad_singular(
      [](double q) { return p_qs(ChannelKind::Depolarizing, q).density; }, 0.0,
      qmax, 1e-9, false, true);
  CHECK(std::abs(mass - 1.0) < 1e-6);

  CHECK_THROWS_AS(p_qs(ChannelKind::Depolarizing, qmax + 1e-6), std::domain_error);
  CHECK_THROWS_AS(p_qs(ChannelKind::Depolarizing, -0.1), std::domain_error);
}

TEST_CASE("amplitude-damping separation density: atom, mass, pushforward") {
  // Weight of the never-separating class is exactly (2+pi)/8.
  const EsdDensityValue at_one = p_qs(ChannelKind::AmplitudeDamping, 1.0);
  CHECK(std::abs(at_one.delta_at_one - (2.0 + pi) / 8.0) < 1e-15);

  const double mass = adaptive_quad_singular(
      [](double q) { return p_qs(ChannelKind::AmplitudeDamping, q).density; },
      0.0, 1.0, 1e-9, true, false);
  CHECK(std::abs(mass - (6.0 - pi) / 8.0) < 1e-6);

  // Independent route: q_S = C0 / (2 p11), so the density is the line
  // integral of the (p11, C0) joint along c0 = 2 p11 q with Jacobian 2 p11.
  for (double q : {0.2, 0.5, 0.8, 0.95}) {
    const double upper = std::min(1.0, 0.5 / q);
    const double push = adaptive_quad_singular(
        [q](double p11) { return 2.0 * p11 * joint_ad(p11, 2.0 * p11 * q); },
        0.0, upper, 1e-10, true, true);
    CHECK(std::abs(p_qs(ChannelKind::AmplitudeDamping, q).density - push) < 1e-6);
  }

  CHECK_THROWS_AS(p_qs(ChannelKind::AmplitudeDamping, 0.0), std::domain_error);
}

TEST_CASE("phase-damping separation density: pins, mass, monte carlo cdf") {
  // Regression pins, Monte Carlo validated (KS against 2e6 analytic
  // separation points) when frozen.
  const struct {
    double q, value;
  } pins[] = {{0.1, 0.155869},  {0.4, 1.142987},  {0.58, 5.663667},
              {0.586, 10.393018}, {0.75, 0.657668}, {0.95, 0.010125}};
  for (const auto& pin : pins)
    CHECK(p_qs(ChannelKind::PhaseDamping, pin.q).density ==
          doctest::Approx(pin.value).epsilon(1e-4));

  // The density spikes logarithmically at q = 2 - sqrt(2); integrate in two
  // pieces facing the spike.
  const double spike = 2.0 - std::sqrt(2.0);
  const auto dens = [](double q) {
    return p_qs(ChannelKind::PhaseDamping, q).density;
  };
  const double mass =
      adaptive_quad_singular(dens, 0.0, spike, 5e-4, false, true) +
      adaptive_quad_singular(dens, spike, 1.0, 5e-4, true, true);
  CHECK(std::abs(mass - 1.0) < 1e-3);

  // CDF at 0.4 against direct simulation of analytic separation points.
  const double cdf04 = adaptive_quad(dens, 0.0, 0.4, 1e-7);
  const auto states = sample_haar_pure({405, 0}, 20000);
  std::size_t below = 0;
  for (const auto& psi : states) {
    const EsdOutcome out = esd_time_analytic(ChannelKind::PhaseDamping, psi);
    if (out.finite() && out.q_s <= 0.4) ++below;
  }
  CHECK(std::abs(cdf04 - below / 20000.0) < 0.015);

  CHECK_THROWS_AS(p_qs(ChannelKind::PhaseDamping, 1.0), std::domain_error);
}

TEST_CASE("joint amplitude-invariant density has unit mass") {
  // Signed-r normalization: integrating r over (-s, s) is twice (0, s).
  const auto inner = [](double s) {
    return 2.0 * adaptive_quad_singular(
                     [s](double r) { return joint_pd_sr(s, r); }, 0.0, s, 1e-8,
                     false, true);
  };
  const double mass = adaptive_quad_singular(inner, 0.0, 0.5, 1e-7, false, true);
  CHECK(std::abs(mass - 1.0) < 1e-5);

  // Even in the signed coordinate, zero outside the wedge.
  CHECK(joint_pd_sr(0.3, 0.2) == doctest::Approx(joint_pd_sr(0.3, -0.2)).epsilon(1e-15));
  CHECK(joint_pd_sr(0.2, 0.3) == 0.0);
  CHECK(joint_pd_sr(0.6, 0.1) == 0.0);
}

TEST_CASE("joint population-concurrence density has unit mass") {
  const auto inner = [](double c0) {
    const double w = std::sqrt(std::max(0.0, 1.0 - c0 * c0));
    return adaptive_quad([c0](double p11) { return joint_ad(p11, c0); }, 0.0,
                         0.5 * (1.0 + w), 1e-9);
  };
  const double mass = adaptive_quad_singular(inner, 0.0, 1.0, 1e-7, true, true);
  CHECK(std::abs(mass - 1.0) < 1e-6);

  CHECK(joint_ad(0.9, 0.8) == 0.0);  // beyond 2 p11 = 1 + w
}

TEST_CASE("depolarizing concurrence density is the shifted haar density") {
  // C = C0 (1-q)^2 - q(2-q)/2 is an affine map of C0, so p_c must be the
  // initial density transported through it.
  for (double q : {0.1, 0.3, 0.6}) {
    const double scale = (1.0 - q) * (1.0 - q);
    const double shift = q * (2.0 - q) / 2.0;
    for (double c : {0.0, 0.1, 0.3, 0.7}) {
      const double c0 = (c + shift) / scale;
      const double expected = c0 <= 1.0 ? p_c0(c0) / scale : 0.0;
      CHECK(p_c(ChannelKind::Depolarizing, c, q) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("amplitude-damping concurrence density against monte carlo") {
  const auto values = mc_values(ChannelKind::AmplitudeDamping, 0.3, 200000);

  // Bin averages: 5-sigma windows around the analytic point value.
  for (double c : {0.1, 0.3, 0.6}) {
    const double analytic = p_c(ChannelKind::AmplitudeDamping, c, 0.3);
    const double mc = mc_bin_density(values, c, 0.01);
    const double sigma = std::sqrt(analytic / (0.02 * values.size()));
    CHECK(std::abs(analytic - mc) < 5.0 * sigma + 1e-3);
  }

  // Survival probability from the density against the sample fraction.
  std::size_t alive = 0;
  for (double v : values)
    if (v > 0.0) ++alive;
  const double s_mc = static_cast<double>(alive) / values.size();
  CHECK(std::abs(survival_from_p_c(ChannelKind::AmplitudeDamping, 0.3) - s_mc) < 3e-3);
}

TEST_CASE("phase-damping concurrence density: pins and monte carlo") {
  const struct {
    double c, q, value;
  } pins[] = {{0.05, 0.1, 0.40222873},
              {0.2, 0.3, 2.23650518},
              {0.05, 0.6, 2.62595445},
              {0.0, 0.9, 0.39009118}};
  for (const auto& pin : pins)
    CHECK(p_c(ChannelKind::PhaseDamping, pin.c, pin.q) ==
          doctest::Approx(pin.value).epsilon(1e-4));

  const auto values = mc_values(ChannelKind::PhaseDamping, 0.3, 200000);
  const double mc = mc_bin_density(values, 0.2, 0.01);
  CHECK(std::abs(p_c(ChannelKind::PhaseDamping, 0.2, 0.3) - mc) < 0.12);

  std::size_t alive = 0;
  for (double v : values)
    if (v > 0.0) ++alive;
  CHECK(std::abs(survival_from_p_c(ChannelKind::PhaseDamping, 0.3, 1e-5) -
                 static_cast<double>(alive) / values.size()) < 4e-3);
}

TEST_CASE("concurrence density edge behavior") {
  // q = 0 falls back to the initial density exactly.
  CHECK(p_c(ChannelKind::PhaseDamping, 0.3, 0.0) == p_c0(0.3));
  CHECK(p_c(ChannelKind::AmplitudeDamping, 0.7, 0.0) == p_c0(0.7));

  // Above the reachable maximum the density vanishes.
  CHECK(p_c(ChannelKind::PhaseDamping, 0.5, 0.6) == 0.0);
  CHECK(p_c(ChannelKind::Depolarizing, 0.9, 0.5) == 0.0);

  CHECK_THROWS_AS(p_c(ChannelKind::Depolarizing, 0.3, 1.0), std::domain_error);
  CHECK_THROWS_AS(p_c(ChannelKind::Depolarizing, 0.3, -0.1), std::domain_error);
  CHECK_THROWS_AS(p_c(ChannelKind::Depolarizing, -0.3, 0.5), std::domain_error);
}

TEST_CASE("depolarizing survival has the closed form") {
  for (double q : {0.10, 0.25, 0.40}) {
    CHECK(std::abs(survival_from_p_c(ChannelKind::Depolarizing, q) -
                   depolarizing_survival_exact(q)) < 1e-6);
  }
}

TEST_CASE("trapezoid rule is exact on linear data") {
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0};
  const std::vector<double> values{1.0, 1.5, 2.0, 3.0};
  CHECK(trapezoid(grid, values) == doctest::Approx(2.0).epsilon(1e-15));
}
