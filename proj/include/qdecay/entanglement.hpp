#pragma once

#include "qdecay/channels.hpp"
#include "qdecay/mat.hpp"
#include "qdecay/qstate.hpp"

namespace qdecay {

// Wootters concurrence of a pure two-qubit state,
//   C0 = 2 |psi00 psi11 - psi01 psi10|.
double concurrence_pure(const PureState& psi);

// Wootters concurrence of a general two-qubit density matrix,
//   C = max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)},
// where l_i are the eigenvalues of rho rho~ with
// rho~ = (sigma2 x sigma2) rho^* (sigma2 x sigma2).  The l_i coincide with
// the eigenvalues of the Hermitian PSD matrix sqrt(rho) rho~ sqrt(rho) =
// B B^dag, B = sqrt(rho) sqrt(rho~); the sqrt(l_i) are read off as the
// singular values of B, which keeps near-zero roots at full precision.
double concurrence_mixed(const DensityMatrix& rho);

// sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) without the final clamp; the
// sign change of this quantity is what the numeric separation-time solver
// brackets.
double concurrence_mixed_unclamped(const DensityMatrix& rho);

// Concurrence after the channel has acted on both qubits at strength q,
// from the closed forms (qt = 2q - q^2):
//   depolarizing:      max{0, C0 (1-q)^2 - q(2-q)/2}
//   amplitude damping: max{0, (1-q)(C0 - 2|psi11|^2 q)}
//   phase damping:     max{0, -qt s + sqrt(qt^2 r^2 + (1-qt) C0^2)}
double concurrence_evolved(ChannelKind kind, double q, const PureState& psi);

// Concurrence when the channel acts on the first qubit only:
// C(q) = max{0, x(q) C0} with x = 1-3q/2 (depolarizing), sqrt(1-q)
// (amplitude damping), 1-q (phase damping).
double concurrence_single(ChannelKind kind, double q, double c0);

// Largest concurrence any initial pure state retains at strength q
// (both qubits noisy): 1 - 3q(2-q)/2 clamped at 0, 1-q, (1-q)^2.
double max_concurrence(ChannelKind kind, double q);

// Upper end of the finite-separation-time domain: 1 - 1/sqrt(3) for the
// depolarizing channel, 1 for the others.
double qs_domain_max(ChannelKind kind);

struct EsdOutcome {
  enum class Kind { FiniteTime, AsymptoticOnly, InitiallySeparable };
  Kind kind;
  double q_s = 1.0;  // meaningful for FiniteTime

  bool finite() const { return kind == Kind::FiniteTime; }
};

// Separation point in q from the closed forms:
//   depolarizing:      q_S = 1 - 1/sqrt(1+2C0)
//   amplitude damping: q_S = C0 / (2|psi11|^2), finite iff C0 <= 2|psi11|^2
//                      (equality gives FiniteTime(1))
//   phase damping:     q_S = 1 - (sqrt(C0^2+d^2) - C0)/d, asymptotic if d=0
// States with C0 = 0 report InitiallySeparable.
EsdOutcome esd_time_analytic(ChannelKind kind, const PureState& psi);

// Separation point of an arbitrary (possibly mixed) initial state, by
// scanning concurrence_mixed_unclamped(apply_local(rho, q)) on a 64-point
// q-grid over [0, 1-1e-5] and bisecting the first sign change down to tol.
// Classification: initial concurrence <= 1e-12 reports InitiallySeparable;
// a root sum still positive at the grid's right end (q = 1 - 1e-5) reports
// AsymptoticOnly. Roots inside the last 1e-5 of the range are therefore
// folded into the asymptotic class: closer to 1 the persistent families
// (concurrence falling like (1-q) or (1-q)^2) drop toward eigensolver
// noise and the sign test stops meaning anything. A probe past the located
// root guards against a crossing the coarse grid skipped and throws
// accuracy_error asking for a denser scan if it fires.
EsdOutcome esd_time_numeric(const DensityMatrix& rho, ChannelKind kind,
                            double tol = 1e-8, SideSpec side = SideSpec::BothQubits);

// Same classification without the grid scan: under all three channels the
// state at q2 > q1 is a local-channel image of the state at q1 (the (1-q)
// factors compose multiplicatively), and local channels never increase
// concurrence, so the root sum crosses zero at most once and straight
// bisection is licensed. Used by the bulk ensemble jobs; agreement with
// esd_time_numeric is covered by tests.
EsdOutcome esd_time_bisect(const DensityMatrix& rho, ChannelKind kind,
                           double tol = 1e-8, SideSpec side = SideSpec::BothQubits);

}  // namespace qdecay
