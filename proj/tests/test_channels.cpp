#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "qdecay/channels.hpp"
#include "qdecay/qstate.hpp"
#include "testutil.hpp"

using namespace qdecay;
using testutil::state4;

TEST_CASE("channel names") {
  CHECK(std::string(channel_name(ChannelKind::Depolarizing)) == "depolarizing");
  CHECK(std::string(channel_name(ChannelKind::AmplitudeDamping)) == "amplitude-damping");
  CHECK(std::string(channel_name(ChannelKind::PhaseDamping)) == "phase-damping");
}

TEST_CASE("kraus sets have the documented shapes and weights") {
  const KrausSet d = make_kraus(ChannelKind::Depolarizing, 0.4);
  CHECK(d.ops.size() == 4);
  CHECK(std::abs(d.ops[0](0, 0) - cplx(std::sqrt(1.0 - 0.3))) < 1e-15);
  CHECK(std::abs(d.ops[1](0, 1) - cplx(std::sqrt(0.1))) < 1e-15);

  const KrausSet ad = make_kraus(ChannelKind::AmplitudeDamping, 0.36);
  CHECK(ad.ops.size() == 2);
  CHECK(std::abs(ad.ops[0](0, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(ad.ops[0](1, 1) - cplx(0.8)) < 1e-15);
  CHECK(std::abs(ad.ops[1](0, 1) - cplx(0.6)) < 1e-15);
  CHECK(std::abs(ad.ops[1](1, 0)) == 0.0);

  const KrausSet pd = make_kraus(ChannelKind::PhaseDamping, 0.25);
  CHECK(pd.ops.size() == 3);
  CHECK(std::abs(pd.ops[1](0, 0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(pd.ops[2](1, 1) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(pd.ops[1](1, 1)) == 0.0);
}

TEST_CASE("kraus construction rejects out-of-range strength") {
  CHECK_THROWS_AS(make_kraus(ChannelKind::Depolarizing, -0.01), std::domain_error);
  CHECK_THROWS_AS(make_kraus(ChannelKind::AmplitudeDamping, 1.01), std::domain_error);
}

TEST_CASE("completeness holds across the full strength range") {
  for (ChannelKind kind : {ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping,
                           ChannelKind::PhaseDamping}) {
    for (double q : {0.0, 1e-6, 0.1, 0.5, 0.9, 1.0}) {
      const CptpReport rep = verify_cptp(make_kraus(kind, q));
      CHECK(rep.completeness_deviation <= 1e-12);
      CHECK(rep.trace_deviation <= 1e-12);
    }
  }
}

TEST_CASE("amplitude damping drains toward the ground state") {
  const PureState psi = state4(cplx(0.0), cplx(0.0), cplx(0.0), cplx(1.0));
  const DensityMatrix rho = DensityMatrix::from_pure(psi);

  // |11><11| through one-sided damping at strength q mixes to
  // (1-q)|11><11| + q|01><01|.
  const DensityMatrix one = apply_local(rho, ChannelKind::AmplitudeDamping, 0.3,
                                        SideSpec::FirstOnly);
  CHECK(std::abs(one.mat(3, 3) - cplx(0.7)) < 1e-14);
  CHECK(std::abs(one.mat(1, 1) - cplx(0.3)) < 1e-14);

  // At q = 1 on both qubits everything lands in |00>.
  const DensityMatrix both = apply_local(rho, ChannelKind::AmplitudeDamping, 1.0);
  CHECK(std::abs(both.mat(0, 0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("phase damping kills coherences and keeps populations") {
  const PureState bell = state4(cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0));
  const DensityMatrix rho = DensityMatrix::from_pure(bell);
  const DensityMatrix out = apply_local(rho, ChannelKind::PhaseDamping, 0.5);
  CHECK(std::abs(out.mat(0, 0) - rho.mat(0, 0)) < 1e-14);
  CHECK(std::abs(out.mat(3, 3) - rho.mat(3, 3)) < 1e-14);
  // Each side multiplies the |00><11| coherence by (1 - q).
  CHECK(std::abs(out.mat(0, 3) - cplx(0.125)) < 1e-14);

  const DensityMatrix gone = apply_local(rho, ChannelKind::PhaseDamping, 1.0);
  CHECK(std::abs(gone.mat(0, 3)) < 1e-14);
  CHECK(std::abs(gone.mat(0, 0) - cplx(0.5)) < 1e-14);
}

TEST_CASE("depolarizing at full strength yields the maximally mixed qubit") {
  const PureState psi = state4(cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0));
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  const DensityMatrix out = apply_local(rho, ChannelKind::Depolarizing, 1.0);
  // Both qubits fully depolarized: rho = I/4 regardless of input.
  CHECK((out.mat - CMat::identity(4) * cplx(0.25)).max_abs() < 1e-14);
}

TEST_CASE("channel output stays a valid state on random inputs") {
  const auto states = sample_haar_pure({13, 0}, 50);
  for (ChannelKind kind : {ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping,
                           ChannelKind::PhaseDamping}) {
    for (const auto& psi : states) {
      const DensityMatrix out =
          apply_local(DensityMatrix::from_pure(psi), kind, 0.37);
      out.validate();
      CHECK(out.purity() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("q = 0 is the identity channel") {
  const auto states = sample_haar_pure({14, 0}, 20);
  for (ChannelKind kind : {ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping,
                           ChannelKind::PhaseDamping}) {
    for (const auto& psi : states) {
      const DensityMatrix rho = DensityMatrix::from_pure(psi);
      const DensityMatrix out = apply_local(rho, kind, 0.0);
      CHECK((out.mat - rho.mat).max_abs() < 1e-15);
    }
  }
}
