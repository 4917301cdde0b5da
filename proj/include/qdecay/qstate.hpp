#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qdecay/mat.hpp"
#include "qdecay/rng.hpp"

namespace qdecay {

// Normalized two-qubit pure state, amplitudes ordered |00>, |01>, |10>, |11>.
struct PureState {
  std::array<cplx, 4> amp{};

  cplx& operator[](int i) { return amp[i]; }
  const cplx& operator[](int i) const { return amp[i]; }

  double norm2() const;

  // Normalizes on construction; rejects the zero vector.
  static PureState normalized(const std::array<cplx, 4>& a);

  CMat projector() const;  // |psi><psi|
};

// Two-qubit density matrix.  Construction is cheap; validate() checks the
// physical invariants (hermiticity, unit trace, positivity) and is meant for
// ingest boundaries and tests, not for inner loops.
struct DensityMatrix {
  CMat mat{4, 4};

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix from_matrix(const CMat& m);  // validates

  double purity() const;  // tr(rho^2), real
  void validate() const;
};

// Local invariants of a pure state used throughout the decay formulas:
//   s + r = 2|psi00 psi11|,  s - r = 2|psi01 psi10|   (so s >= r >= 0),
//   d = 4 |psi00 psi01 psi10 psi11|^{1/2}  (d^2 = 4(s^2 - r^2)),
//   theta = arg(psi00 psi11) - arg(psi01 psi10) wrapped to [0, 2pi),
//   c0 = initial concurrence 2|psi00 psi11 - psi01 psi10|.
// With theta' = pi - theta these satisfy
//   c0 = sqrt(2) sqrt(s^2 + r^2 + (s^2 - r^2) cos(theta')).
// theta is reported as 0 when either amplitude product vanishes.
struct SrdInvariants {
  double s = 0.0;
  double r = 0.0;
  double d = 0.0;
  double theta = 0.0;
  double c0 = 0.0;
};

SrdInvariants srd_invariants(const PureState& psi);

// Haar-uniform pure states: 8 i.i.d. normals per state, normalized.
// Sample i uses stream `seed.stream + i`, so ensembles can be split across
// workers by index range with bit-identical results.
std::vector<PureState> sample_haar_pure(SeedSpec seed, std::size_t n);

// Hilbert-Schmidt measure: rho = G G^dag / tr(G G^dag), G a 4x4 complex
// Ginibre matrix.
std::vector<DensityMatrix> sample_hs_mixed(SeedSpec seed, std::size_t n);

// Bures measure: rho = (I+U) G G^dag (I+U^dag) / tr(...), with U Haar via
// QR of an independent Ginibre matrix (positive-diagonal R fixes the phase
// ambiguity, which is exactly the Haar-correct choice).
std::vector<DensityMatrix> sample_bures_mixed(SeedSpec seed, std::size_t n);

// Single draws at a given stream; the ensemble samplers above are loops
// over these.
PureState draw_haar_pure(SeedSpec seed);
DensityMatrix draw_hs_mixed(SeedSpec seed);
DensityMatrix draw_bures_mixed(SeedSpec seed);

// Haar 4x4 unitary (QR of Ginibre, positive diagonal R).
CMat draw_haar_unitary(SeedSpec seed);

}  // namespace qdecay
