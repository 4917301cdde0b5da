#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "qdecay/channels.hpp"
#include "qdecay/entanglement.hpp"
#include "qdecay/errors.hpp"
#include "qdecay/qstate.hpp"

namespace qdecay {

enum class ProfileKind {
  MarkovConstant,
  NonAutonomous,
  PseudomodeAD,
  OhmicDephasing,
  SingleOscillatorDephasing,
  Tabulated,
};

const char* profile_name(ProfileKind kind);

// Physical-time channel-strength map q(t). Parameter fields are read
// according to `kind`; when `samples` is non-empty it overrides the formula
// and q_at interpolates the table linearly (clamped at both ends).
struct QProfile {
  ProfileKind kind = ProfileKind::MarkovConstant;
  double gamma = 1.0;        // MarkovConstant decay rate
  double gamma_env = 1.0;    // NonAutonomous: rate inside the driving exponential
  double gamma_rate = 1.0;   // NonAutonomous: rate multiplying the generator
  double lambda = 1.0;       // PseudomodeAD / OhmicDephasing: environment width
  double gamma0 = 1.0;       // PseudomodeAD: system relaxation rate
  double omega = 1.0;        // SingleOscillatorDephasing frequency
  double coupling = 1.0;     // SingleOscillatorDephasing weight
  double temperature = 0.0;  // dephasing kernels; 0 drops the coth factor
  bool conventional_kernel = false;  // dephasing: use the 1/omega^2 kernel
  std::vector<std::pair<double, double>> samples;  // optional (t, q) table

  static QProfile markov(double gamma);
  static QProfile nonautonomous(double gamma_env, double gamma_rate);
  static QProfile pseudomode(double lambda, double gamma0);
  static QProfile ohmic(double lambda, double temperature,
                        bool conventional_kernel = false);
  static QProfile oscillator(double omega, double coupling, double temperature,
                             bool conventional_kernel = false);
  static QProfile tabulated(std::vector<std::pair<double, double>> samples);

  double q_at(double t) const;  // throws std::domain_error for t < 0
  double q_inf() const;         // supremum of q over t >= 0
};

// Constant-rate map q = 1 - e^(-gamma t).
double q_markov(double gamma, double t);

// Exponentially switched-off generator: accumulated dissipation
// Theta(t) = gamma_rate (1 - e^(-gamma_env t)) / gamma_env and
// q = 1 - e^(-Theta). Saturates at q_inf = 1 - e^(-gamma_rate/gamma_env).
double q_nonautonomous(double gamma_env, double gamma_rate, double t);

// Lorentzian-reservoir amplitude damping q = 1 - |c0(t)|^2 with
// c0 = e^(-lambda t/2) (cos(Omega t) + lambda/(2 Omega) sin(Omega t)) and
// Omega = sqrt(lambda (2 gamma0 - lambda))/2. For 2 gamma0 <= lambda the
// trigonometric pair continues analytically to cosh/sinh (Omega -> |Omega|),
// and the map is monotone. For 2 gamma0 > lambda the map oscillates and
// touches 1 at each zero of c0.
double q_pseudomode_ad(double lambda, double gamma0, double t);

// Dephasing map q = 1 - e^(-Gamma(t)). For OhmicDephasing,
// Gamma(t) = (1/lambda) integral over (0, 50 lambda) of
// e^(-omega/lambda) (1 - cos omega t) coth(omega/(2T)) d omega (the
// truncation tail is below 1e-12); SingleOscillatorDephasing keeps a single
// summand coupling (1 - cos omega t)/omega coth(omega/(2T)), making q(t)
// periodic with period 2 pi / omega. Temperature 0 replaces coth by 1.
// `conventional_kernel` divides the integrand by one more power of omega.
double q_dephasing(const QProfile& profile, double t);

struct SuddenEvent {
  enum class Kind { Death, Birth };
  double time = 0.0;
  Kind kind = Kind::Death;
  std::size_t state_index = 0;
};

// Locates the times where q(t) crosses the state's separation point q_S
// (upward crossing = Death, downward = Birth), scanning each t_grid
// interval on 16 subintervals and bisecting every strict sign change.
// Events alternate by construction. A state that only separates
// asymptotically uses q_S = 1 and normally yields no events. Throws
// std::invalid_argument for an initially separable state or a bad grid, and
// an accuracy error when two crossings land inside one t_grid interval
// (the grid cannot separate them).
std::vector<SuddenEvent> detect_sudden_events(const PureState& psi,
                                              ChannelKind kind,
                                              const QProfile& profile,
                                              const std::vector<double>& t_grid);

// Evaluates a q-indexed family (any callable of q) along the profile's
// time grid. The profile must keep q inside [0, 1]; a violating table
// entry surfaces as internal_error.
template <class Family>
auto compose_through_profile(Family&& family, const QProfile& profile,
                             const std::vector<double>& t_grid) {
  using Out = std::decay_t<decltype(family(0.0))>;
  std::vector<Out> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double q = profile.q_at(t);
    if (!(q >= 0.0 && q <= 1.0))
      throw internal_error("profile produced q outside [0, 1]");
    out.push_back(family(q));
  }
  return out;
}

}  // namespace qdecay
