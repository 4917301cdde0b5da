#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "qdecay/errors.hpp"
#include "qdecay/mat.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/quad.hpp"
#include "qdecay/rng.hpp"
#include "qdecay/special.hpp"
#include "testutil.hpp"

using namespace qdecay;
using std::numbers::pi;

TEST_CASE("matrix algebra basics") {
  CMat a = CMat::identity(4);
  a(0, 1) = cplx(2.0, -1.0);
  const CMat b = a * a.adjoint();
  CHECK(b.hermiticity_deviation() < 1e-15);
  CHECK(std::abs(a.trace() - cplx(4.0)) < 1e-15);
  CHECK(a.transpose()(1, 0) == a(0, 1));
  CHECK(a.conjugate()(0, 1) == std::conj(a(0, 1)));
  CHECK(CMat::identity(4).frobenius() == doctest::Approx(2.0));
}

TEST_CASE("pauli matrices square to identity and anticommute") {
  for (int i = 1; i <= 3; ++i) {
    const CMat sq = pauli(i) * pauli(i);
    CHECK((sq - CMat::identity(2)).max_abs() < 1e-15);
  }
  const CMat xy = pauli(1) * pauli(2) + pauli(2) * pauli(1);
  CHECK(xy.max_abs() < 1e-15);
}

TEST_CASE("kron reproduces a hand-expanded product") {
  CMat x = pauli(1);
  CMat z = pauli(3);
  const CMat k = kron(x, z);
  // (x kron z)(0,2) = x(0,1) z(0,0) = 1, (1,3) = x(0,1) z(1,1) = -1
  CHECK(k(0, 2) == cplx(1.0));
  CHECK(k(1, 3) == cplx(-1.0));
  CHECK(k(0, 0) == cplx(0.0));
}

TEST_CASE("hermitian eigensolver matches trace and recomposition") {
  CounterRng rng({11, 0});
  for (int trial = 0; trial < 20; ++trial) {
    CMat g = CMat::identity(4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double u = 0.0, v = 0.0;
        rng.normal_pair(u, v);
        g(r, c) = cplx(u, v);
      }
    const CMat h = g.hermitized();
    const EigResult e = hermitian_eig(h);
    cplx tr(0.0);
    CMat recomposed = CMat::identity(4);
    recomposed *= cplx(0.0);
    for (int k = 0; k < 4; ++k) {
      tr += e.values[k];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          recomposed(r, c) += e.values[k] * e.vectors(r, k) * std::conj(e.vectors(c, k));
    }
    CHECK(std::abs(tr - h.trace()) < 1e-12);
    CHECK((recomposed - h).max_abs() < 1e-12);
    for (int k = 1; k < 4; ++k) CHECK(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("counter rng is stateless across streams and reproducible") {
  CounterRng a({42, 7});
  CounterRng b({42, 7});
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // Different streams under the same seed must not collide.
  CounterRng c({42, 8});
  std::set<std::uint64_t> seen;
  CounterRng d({42, 7});
  for (int i = 0; i < 100; ++i) seen.insert(d.next_u64());
  int hits = 0;
  for (int i = 0; i < 100; ++i) hits += seen.count(c.next_u64()) ? 1 : 0;
  CHECK(hits == 0);
}

TEST_CASE("uniform and normal draws have sane moments") {
  CounterRng rng({5, 1});
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));

  double gs = 0.0, gs2 = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    double x = 0.0, y = 0.0;
    rng.normal_pair(x, y);
    gs += x + y;
    gs2 += x * x + y * y;
  }
  CHECK(gs / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(gs2 / n == doctest::Approx(1.0).epsilon(0.02));

  CounterRng pos({5, 2});
  for (int i = 0; i < 1000; ++i) CHECK(pos.uniform_pos() > 0.0);
}

TEST_CASE("adaptive quadrature on known integrals") {
  const double a = adaptive_quad([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
  CHECK(a == doctest::Approx(2.0).epsilon(1e-12));

  const double b = adaptive_quad([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12);
  CHECK(b == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("singular quadrature absorbs endpoint roots") {
  // integral of 1/sqrt(x) on (0,1] is 2; the plain rule would stall here.
  const double a = adaptive_quad_singular(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, true, false);
  CHECK(a == doctest::Approx(2.0).epsilon(1e-9));

  // integral of 1/sqrt(x(1-x)) over (0,1) is pi, singular at both ends.
  const double b = adaptive_quad_singular(
      [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0, 1e-10,
      true, true);
  CHECK(b == doctest::Approx(pi).epsilon(1e-9));
}

TEST_CASE("quadrature failure carries its best estimate") {
  // A hard non-integrable spike must fail loudly, not silently return junk.
  bool threw = false;
  try {
    adaptive_quad([](double x) { return 1.0 / std::abs(x - 0.3141); }, 0.0, 1.0, 1e-12);
  } catch (const accuracy_error& e) {
    threw = true;
    CHECK(e.error_bound() > 0.0);
    CHECK(std::isfinite(e.best()));
  }
  CHECK(threw);
}

TEST_CASE("complete elliptic integral against known values") {
  CHECK(elliptic_k(0.0) == doctest::Approx(pi / 2.0).epsilon(1e-14));
  // K(1/2) = Gamma(1/4)^2 / (4 sqrt(pi))
  const double g14 = 3.6256099082219083119;
  CHECK(elliptic_k(0.5) == doctest::Approx(g14 * g14 / (4.0 * std::sqrt(pi))).epsilon(1e-13));
  // Negative parameter is legal through the imaginary-modulus transform.
  CHECK(elliptic_k(-1.0) == doctest::Approx(1.3110287771460599052).epsilon(1e-13));
}

TEST_CASE("parallel_for covers the range once and propagates errors") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);

  bool threw = false;
  try {
    parallel_for(16, 4, [](std::size_t i) {
      if (i == 9) throw std::runtime_error("boom");
    });
  } catch (const std::runtime_error&) {
    threw = true;
  }
  CHECK(threw);
}
