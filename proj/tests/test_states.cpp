#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdecay/qstate.hpp"
#include "testutil.hpp"

using namespace qdecay;
using testutil::state4;
using std::numbers::pi;

TEST_CASE("normalized construction and projector") {
  const PureState psi = state4(cplx(3.0), cplx(0.0), cplx(0.0), cplx(4.0, 0.0));
  CHECK(psi.norm2() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(psi[0]) == doctest::Approx(0.6));
  CHECK(std::abs(psi[3]) == doctest::Approx(0.8));

  const CMat p = psi.projector();
  CHECK((p * p - p).max_abs() < 1e-15);
  CHECK(std::abs(p.trace() - cplx(1.0)) < 1e-15);

  CHECK_THROWS_AS(PureState::normalized({cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)}),
                  std::invalid_argument);
}

TEST_CASE("density matrix validation catches unphysical input") {
  const PureState psi = state4(cplx(1.0), cplx(1.0), cplx(0.0), cplx(0.0));
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-14));
  rho.validate();

  CMat bad_trace = rho.mat;
  bad_trace(0, 0) += cplx(0.5);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), std::invalid_argument);

  CMat not_hermitian = rho.mat;
  not_hermitian(0, 1) += cplx(0.0, 0.3);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), std::invalid_argument);

  // Hermitian, unit trace, but with a negative eigenvalue.
  CMat indefinite = CMat::identity(4);
  indefinite *= cplx(0.5);
  indefinite(0, 0) = cplx(-0.5);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(indefinite), std::invalid_argument);
}

TEST_CASE("local invariants on hand-solved states") {
  // (|00> + |11>)/sqrt(2): s = r = 1/2, d = 0, c0 = 1.
  const PureState bell = state4(cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0));
  const SrdInvariants bi = srd_invariants(bell);
  CHECK(bi.s == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bi.r == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bi.d == doctest::Approx(0.0));
  CHECK(bi.c0 == doctest::Approx(1.0).epsilon(1e-15));

  // Equal superposition of all four: s = 1/2, r = 0, d = 1, c0 = 0 when the
  // two products carry the same phase.
  const PureState flat = state4(cplx(0.5), cplx(0.5), cplx(0.5), cplx(0.5));
  const SrdInvariants fi = srd_invariants(flat);
  CHECK(fi.s == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fi.r == doctest::Approx(0.0));
  CHECK(fi.d == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fi.c0 == doctest::Approx(0.0));

  // Flipping the sign of one product moves theta' and restores entanglement.
  const PureState opposed = state4(cplx(0.5), cplx(0.5), cplx(0.5), cplx(-0.5));
  const SrdInvariants oi = srd_invariants(opposed);
  CHECK(oi.c0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oi.theta == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("invariant identities hold on random states") {
  const auto states = sample_haar_pure({21, 0}, 500);
  for (const auto& psi : states) {
    const SrdInvariants v = srd_invariants(psi);
    CHECK(v.s >= v.r);
    CHECK(v.r >= 0.0);
    CHECK(v.s <= 0.5 + 1e-12);
    CHECK(v.d * v.d == doctest::Approx(4.0 * (v.s * v.s - v.r * v.r)).epsilon(1e-10));
    const double tp = pi - v.theta;
    const double c_from_srt = std::sqrt(2.0) *
        std::sqrt(std::max(0.0, v.s * v.s + v.r * v.r +
                                    (v.s * v.s - v.r * v.r) * std::cos(tp)));
    CHECK(v.c0 == doctest::Approx(c_from_srt).epsilon(1e-9));
  }
}

TEST_CASE("haar sampler is reproducible and worker-splittable") {
  const auto all = sample_haar_pure({77, 3}, 40);
  const auto again = sample_haar_pure({77, 3}, 40);
  for (int i = 0; i < 40; ++i)
    for (int k = 0; k < 4; ++k) CHECK(all[i][k] == again[i][k]);

  // Sample i depends only on stream + i, so single draws must reproduce the
  // ensemble entries exactly.
  for (std::size_t i : {0u, 7u, 39u}) {
    const PureState one = draw_haar_pure({77, 3 + static_cast<std::uint64_t>(i)});
    for (int k = 0; k < 4; ++k) CHECK(one[k] == all[i][k]);
  }
}

TEST_CASE("haar states have uniform marginal moments") {
  const auto states = sample_haar_pure({31, 0}, 100000);
  // E|amp_k|^2 = 1/4 for each component under the Haar measure.
  double m[4] = {0, 0, 0, 0};
  for (const auto& psi : states)
    for (int k = 0; k < 4; ++k) m[k] += std::norm(psi[k]);
  for (int k = 0; k < 4; ++k)
    CHECK(m[k] / states.size() == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("haar unitary draws are unitary and phase-fixed") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CMat u = draw_haar_unitary({3, s});
    CHECK((u * u.adjoint() - CMat::identity(4)).max_abs() < 1e-13);
  }
}

TEST_CASE("mixed-state samplers produce valid states with the right purity") {
  const auto hs = sample_hs_mixed({909, 0}, 20000);
  double purity_sum = 0.0;
  for (const auto& rho : hs) {
    purity_sum += rho.purity();
  }
  hs.front().validate();
  hs.back().validate();
  // Mean purity under the Hilbert-Schmidt measure in dimension 4 is 8/17.
  CHECK(purity_sum / hs.size() == doctest::Approx(8.0 / 17.0).epsilon(0.01));

  const auto bures = sample_bures_mixed({911, 0}, 2000);
  double bures_purity = 0.0;
  for (const auto& rho : bures) bures_purity += rho.purity();
  bures.front().validate();
  // Bures states are purer on average than Hilbert-Schmidt ones.
  CHECK(bures_purity / bures.size() > purity_sum / hs.size());

  // Single draws match ensemble entries, same contract as the pure sampler.
  const DensityMatrix one = draw_hs_mixed({909, 5});
  CHECK((one.mat - hs[5].mat).max_abs() == 0.0);
}
