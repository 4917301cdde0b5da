#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdecay/ensembles.hpp"
#include "qdecay/quad.hpp"
#include "qdecay/rng.hpp"
#include "testutil.hpp"

using namespace qdecay;
using testutil::linspace;

TEST_CASE("evolved concurrences align with the scalar closed forms") {
  const auto states = sample_haar_pure({501, 0}, 300);
  const auto values =
      evolved_concurrences(ChannelKind::AmplitudeDamping, 0.35, states,
                           SideSpec::BothQubits);
  REQUIRE(values.size() == states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK(values[i] ==
          concurrence_evolved(ChannelKind::AmplitudeDamping, 0.35, states[i]));

  const auto single = evolved_concurrences(ChannelKind::PhaseDamping, 0.5,
                                           states, SideSpec::FirstOnly);
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK(single[i] == concurrence_single(ChannelKind::PhaseDamping, 0.5,
                                          concurrence_pure(states[i])));
}

TEST_CASE("pure and mixed evolution paths agree") {
  const auto states = sample_haar_pure({502, 0}, 100);
  std::vector<DensityMatrix> rhos;
  rhos.reserve(states.size());
  for (const auto& psi : states) rhos.push_back(DensityMatrix::from_pure(psi));

  const auto closed = evolved_concurrences(ChannelKind::Depolarizing, 0.2,
                                           states, SideSpec::BothQubits);
  const auto kraus = evolved_concurrences(ChannelKind::Depolarizing, 0.2, rhos,
                                          SideSpec::BothQubits);
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK(std::abs(closed[i] - kraus[i]) < 1e-9);
}

TEST_CASE("worker count never changes results") {
  const auto states = sample_haar_pure({503, 0}, 500);
  const auto one = evolved_concurrences(ChannelKind::PhaseDamping, 0.4, states,
                                        SideSpec::BothQubits, 1);
  for (int workers : {2, 3, 7}) {
    const auto many = evolved_concurrences(ChannelKind::PhaseDamping, 0.4,
                                           states, SideSpec::BothQubits, workers);
    REQUIRE(many.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(many[i] == one[i]);
  }
}

TEST_CASE("summary statistics on hand-checkable values") {
  const std::vector<double> values{0.0, 0.0, 0.5, 1.0};
  const EnsembleStats st = stats_from_values(values);
  CHECK(st.n == 4);
  CHECK(st.mean == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(st.std == doctest::Approx(std::sqrt(0.171875)).epsilon(1e-12));
  CHECK(st.separable_fraction == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(st.max_seen == 1.0);

  const auto states = sample_haar_pure({504, 0}, 200);
  const EnsembleStats direct = ensemble_stats(ChannelKind::AmplitudeDamping, 0.3,
                                              states, SideSpec::BothQubits);
  const EnsembleStats via = stats_from_values(evolved_concurrences(
      ChannelKind::AmplitudeDamping, 0.3, states, SideSpec::BothQubits));
  CHECK(direct.mean == via.mean);
  CHECK(direct.std == via.std);
  CHECK(direct.separable_fraction == via.separable_fraction);
}

TEST_CASE("separation sweep on hilbert-schmidt states: frozen class counts") {
  // 10^4 states at seed 909. The separable count is a property of the state
  // list alone, so it must agree across channels; only amplitude damping
  // has a never-separating class on mixed states.
  const auto states = sample_hs_mixed({909, 0}, 10000);

  const EsdSampleSet d = esd_samples_numeric(states, ChannelKind::Depolarizing);
  CHECK(d.finite.size() == 7578);
  CHECK(d.asymptotic == 0);
  CHECK(d.separable == 2422);

  const EsdSampleSet ad =
      esd_samples_numeric(states, ChannelKind::AmplitudeDamping);
  CHECK(ad.finite.size() == 7378);
  CHECK(ad.asymptotic == 200);
  CHECK(ad.separable == 2422);

  const EsdSampleSet pd = esd_samples_numeric(states, ChannelKind::PhaseDamping);
  CHECK(pd.finite.size() == 7578);
  CHECK(pd.asymptotic == 0);
  CHECK(pd.separable == 2422);
}

TEST_CASE("histogram density bookkeeping") {
  const std::vector<double> samples{0.1, 0.1, 0.3};
  const DensityCurve curve = empirical_density(samples, 2, 0.0, 0.4);
  curve.validate();
  CHECK(curve.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.point_masses.empty());

  // Censored observations sit in an atom at the right edge.
  const DensityCurve censored = empirical_density(samples, 2, 0.0, 0.4, 2);
  censored.validate();
  REQUIRE(censored.point_masses.size() == 1);
  CHECK(censored.point_masses[0].first == 0.4);
  CHECK(censored.point_masses[0].second == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(censored.continuous_mass() == doctest::Approx(0.6).epsilon(1e-12));

  // Constant samples collapse to a pure atom.
  const DensityCurve atom = empirical_density({0.25, 0.25, 0.25}, 4, 0.0, 1.0);
  REQUIRE(atom.point_masses.size() == 1);
  CHECK(atom.point_masses[0].first == doctest::Approx(0.25));
  CHECK(atom.point_masses[0].second == doctest::Approx(1.0));

  CHECK_THROWS_AS(empirical_density({}, 4, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_density(samples, 1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_density({2.0}, 4, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("curve validation rejects malformed input") {
  DensityCurve good;
  good.grid = linspace(0.0, 1.0, 2001);
  good.values.resize(good.grid.size());
  for (std::size_t i = 0; i < good.grid.size(); ++i)
    good.values[i] = p_c0(good.grid[i]);
  good.validate();

  DensityCurve bad = good;
  std::swap(bad.grid[10], bad.grid[11]);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  DensityCurve negative = good;
  negative.values[5] = -0.1;
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);

  DensityCurve short_mass = good;
  for (auto& v : short_mass.values) v *= 0.5;
  CHECK_THROWS_AS(short_mass.validate(), std::invalid_argument);
}

TEST_CASE("ks distance separates matching from mismatched samples") {
  DensityCurve analytic;
  analytic.grid = linspace(0.0, 1.0, 2001);
  analytic.values.resize(analytic.grid.size());
  for (std::size_t i = 0; i < analytic.grid.size(); ++i)
    analytic.values[i] = p_c0(analytic.grid[i]);

  // Exact inverse-cdf samples of the same law.
  CounterRng rng({505, 0});
  std::vector<double> samples(100000);
  for (auto& s : samples) {
    const double u = rng.uniform();
    s = std::sqrt(1.0 - std::pow(1.0 - u, 2.0 / 3.0));
  }
  CHECK(ks_distance(samples, analytic) < 0.01);

  // Uniform samples are far from this law.
  std::vector<double> uniform(20000);
  for (auto& s : uniform) s = rng.uniform();
  CHECK(ks_distance(uniform, analytic) > 0.1);
}

TEST_CASE("separation density recovered from the concurrence density") {
  const double qmax = qs_domain_max(ChannelKind::Depolarizing);
  const DensityCurve curve = esd_density_from_concurrence(
      ChannelKind::Depolarizing, linspace(0.0, 0.97 * qmax, 101));
  curve.validate();

  double sup = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    sup = std::max(sup, std::abs(curve.values[i] -
                                 p_qs(ChannelKind::Depolarizing, curve.grid[i]).density));
  CHECK(sup <= 1e-3);

  // The mass that has not separated by the end of the grid sits in an atom.
  REQUIRE(curve.point_masses.size() == 1);
  const double at = curve.point_masses[0].first;
  CHECK(curve.point_masses[0].second ==
        doctest::Approx(1.0 - p_c0_cdf(at * (2.0 - at) /
                                       (2.0 * (1.0 - at) * (1.0 - at))))
            .epsilon(1e-3));

  CHECK_THROWS_AS(
      esd_density_from_concurrence(ChannelKind::Depolarizing, {0.1, 0.2}),
      std::invalid_argument);
  CHECK_THROWS_AS(esd_density_from_concurrence(ChannelKind::Depolarizing,
                                               {0.1, 0.05, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("scaling fit recovers a planted stretch factor") {
  DensityCurve a;
  a.grid = linspace(0.0, 1.0, 401);
  a.values.resize(a.grid.size());
  for (std::size_t i = 0; i < a.grid.size(); ++i) a.values[i] = p_c0(a.grid[i]);

  const double planted = 1.56;
  DensityCurve b;
  b.grid = linspace(0.0, 1.0 / planted, 401);
  b.hi = 1.0 / planted;
  b.values.resize(b.grid.size());
  for (std::size_t i = 0; i < b.grid.size(); ++i)
    b.values[i] = planted * p_c0(planted * b.grid[i]);

  CHECK(mixed_scaling_fit(a, b) == doctest::Approx(planted).epsilon(0.01));

  DensityCurve atoms;
  atoms.grid = {0.0, 0.5, 1.0};
  atoms.values = {0.0, 0.0, 0.0};
  atoms.point_masses = {{0.5, 1.0}};
  CHECK_THROWS_AS(mixed_scaling_fit(atoms, atoms), std::invalid_argument);
}
