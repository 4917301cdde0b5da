#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdecay/quad.hpp"
#include "qdecay/timemaps.hpp"

namespace qdecay {

namespace {

double clamp01(double q) { return std::min(1.0, std::max(0.0, q)); }

// coth(x) for x > 0 without overflow or small-x cancellation.
double coth_pos(double x) {
  if (x < 1e-4) return 1.0 / x + x / 3.0;
  return 1.0 / std::tanh(x);
}

double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

double thermal_factor(double omega, double temperature) {
  if (temperature <= 0.0) return 1.0;
  return coth_pos(omega / (2.0 * temperature));
}

double gamma_ohmic(double lambda, double temperature, bool conventional, double t) {
  const double cut = 50.0 * lambda;
  const auto integrand = [&](double w) {
    double g = std::exp(-w / lambda) * one_minus_cos(w * t) *
               thermal_factor(w, temperature) / lambda;
    if (conventional) g /= w;
    return g;
  };
  return adaptive_quad(integrand, 0.0, cut, 1e-10);
}

double gamma_oscillator(double omega, double coupling, double temperature,
                        bool conventional, double t) {
  double g = coupling * one_minus_cos(omega * t) / omega *
             thermal_factor(omega, temperature);
  if (conventional) g /= omega;
  return g;
}

double interp_samples(const std::vector<std::pair<double, double>>& samples,
                      double t) {
  if (t <= samples.front().first) return samples.front().second;
  if (t >= samples.back().first) return samples.back().second;
  const auto it = std::upper_bound(
      samples.begin(), samples.end(), t,
      [](double x, const std::pair<double, double>& s) { return x < s.first; });
  const auto& [t1, q1] = *it;
  const auto& [t0, q0] = *(it - 1);
  const double u = (t - t0) / (t1 - t0);
  return (1.0 - u) * q0 + u * q1;
}

}  // namespace

const char* profile_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::MarkovConstant: return "markov";
    case ProfileKind::NonAutonomous: return "nonautonomous";
    case ProfileKind::PseudomodeAD: return "pseudomode";
    case ProfileKind::OhmicDephasing: return "ohmic";
    case ProfileKind::SingleOscillatorDephasing: return "oscillator";
    case ProfileKind::Tabulated: return "tabulated";
  }
  throw internal_error("unhandled profile kind");
}

QProfile QProfile::markov(double gamma) {
  QProfile p;
  p.kind = ProfileKind::MarkovConstant;
  p.gamma = gamma;
  return p;
}

QProfile QProfile::nonautonomous(double gamma_env, double gamma_rate) {
  QProfile p;
  p.kind = ProfileKind::NonAutonomous;
  p.gamma_env = gamma_env;
  p.gamma_rate = gamma_rate;
  return p;
}

QProfile QProfile::pseudomode(double lambda, double gamma0) {
  QProfile p;
  p.kind = ProfileKind::PseudomodeAD;
  p.lambda = lambda;
  p.gamma0 = gamma0;
  return p;
}

QProfile QProfile::ohmic(double lambda, double temperature, bool conventional_kernel) {
  QProfile p;
  p.kind = ProfileKind::OhmicDephasing;
  p.lambda = lambda;
  p.temperature = temperature;
  p.conventional_kernel = conventional_kernel;
  return p;
}

QProfile QProfile::oscillator(double omega, double coupling, double temperature,
                              bool conventional_kernel) {
  QProfile p;
  p.kind = ProfileKind::SingleOscillatorDephasing;
  p.omega = omega;
  p.coupling = coupling;
  p.temperature = temperature;
  p.conventional_kernel = conventional_kernel;
  return p;
}

QProfile QProfile::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.empty())
    throw std::invalid_argument("tabulated profile needs at least one sample");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (!(samples[i + 1].first > samples[i].first))
      throw std::invalid_argument("tabulated profile times must ascend strictly");
  QProfile p;
  p.kind = ProfileKind::Tabulated;
  p.samples = std::move(samples);
  return p;
}

double q_markov(double gamma, double t) {
  if (!(gamma > 0.0)) throw std::domain_error("q_markov: gamma must be positive");
  if (!(t >= 0.0)) throw std::domain_error("q_markov: t must be non-negative");
  return -std::expm1(-gamma * t);
}

double q_nonautonomous(double gamma_env, double gamma_rate, double t) {
  if (!(gamma_env > 0.0) || !(gamma_rate > 0.0))
    throw std::domain_error("q_nonautonomous: rates must be positive");
  if (!(t >= 0.0)) throw std::domain_error("q_nonautonomous: t must be non-negative");
  const double theta = gamma_rate * (-std::expm1(-gamma_env * t)) / gamma_env;
  return -std::expm1(-theta);
}

double q_pseudomode_ad(double lambda, double gamma0, double t) {
  if (!(lambda > 0.0) || !(gamma0 > 0.0))
    throw std::domain_error("q_pseudomode_ad: rates must be positive");
  if (!(t >= 0.0)) throw std::domain_error("q_pseudomode_ad: t must be non-negative");
  const double disc = 0.25 * lambda * (2.0 * gamma0 - lambda);  // Omega^2
  double c0_sq;
  if (disc > 0.0) {
    const double om = std::sqrt(disc);
    const double base = std::cos(om * t) + 0.5 * lambda / om * std::sin(om * t);
    c0_sq = std::exp(-lambda * t) * base * base;
  } else if (disc < 0.0) {
    // cosh/sinh continuation, folded into the decaying exponential so the
    // growing half never overflows: both exponents below are negative.
    const double om = std::sqrt(-disc);
    const double a = 0.5 * lambda / om;  // > 1 in this regime
    const double u = 0.5 * ((1.0 + a) * std::exp((om - 0.5 * lambda) * t) +
                            (1.0 - a) * std::exp((-om - 0.5 * lambda) * t));
    c0_sq = u * u;
  } else {
    const double base = 1.0 + 0.5 * lambda * t;
    c0_sq = std::exp(-lambda * t) * base * base;
  }
  return clamp01(1.0 - c0_sq);
}

double q_dephasing(const QProfile& profile, double t) {
  if (!(t >= 0.0)) throw std::domain_error("q_dephasing: t must be non-negative");
  double gamma_t;
  switch (profile.kind) {
    case ProfileKind::OhmicDephasing:
      if (!(profile.lambda > 0.0))
        throw std::domain_error("q_dephasing: lambda must be positive");
      gamma_t = gamma_ohmic(profile.lambda, profile.temperature,
                            profile.conventional_kernel, t);
      break;
    case ProfileKind::SingleOscillatorDephasing:
      if (!(profile.omega > 0.0) || !(profile.coupling > 0.0))
        throw std::domain_error("q_dephasing: omega and coupling must be positive");
      gamma_t = gamma_oscillator(profile.omega, profile.coupling,
                                 profile.temperature, profile.conventional_kernel, t);
      break;
    default:
      throw std::invalid_argument("q_dephasing: profile is not a dephasing kind");
  }
  return clamp01(-std::expm1(-gamma_t));
}

double QProfile::q_at(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("QProfile::q_at: t must be non-negative");
  if (!samples.empty()) return interp_samples(samples, t);
  switch (kind) {
    case ProfileKind::MarkovConstant: return q_markov(gamma, t);
    case ProfileKind::NonAutonomous: return q_nonautonomous(gamma_env, gamma_rate, t);
    case ProfileKind::PseudomodeAD: return q_pseudomode_ad(lambda, gamma0, t);
    case ProfileKind::OhmicDephasing:
    case ProfileKind::SingleOscillatorDephasing: return q_dephasing(*this, t);
    case ProfileKind::Tabulated:
      throw std::invalid_argument("QProfile::q_at: tabulated profile has no samples");
  }
  throw internal_error("unhandled profile kind");
}

double QProfile::q_inf() const {
  if (!samples.empty()) {
    double m = 0.0;
    for (const auto& [t, q] : samples) {
      (void)t;
      m = std::max(m, q);
    }
    return m;
  }
  switch (kind) {
    case ProfileKind::MarkovConstant: return 1.0;
    case ProfileKind::NonAutonomous:
      return -std::expm1(-gamma_rate / gamma_env);
    case ProfileKind::PseudomodeAD: return 1.0;
    case ProfileKind::OhmicDephasing:
      // At zero temperature the printed kernel integrates to a finite
      // Gamma(inf) = 1; every other combination sends Gamma to infinity.
      return (temperature <= 0.0 && !conventional_kernel) ? -std::expm1(-1.0) : 1.0;
    case ProfileKind::SingleOscillatorDephasing:
      return q_dephasing(*this, M_PI / omega);  // crest of the periodic map
    case ProfileKind::Tabulated:
      throw std::invalid_argument("QProfile::q_inf: tabulated profile has no samples");
  }
  throw internal_error("unhandled profile kind");
}

std::vector<SuddenEvent> detect_sudden_events(const PureState& psi,
                                              ChannelKind kind,
                                              const QProfile& profile,
                                              const std::vector<double>& t_grid) {
  const EsdOutcome outcome = esd_time_analytic(kind, psi);
  if (outcome.kind == EsdOutcome::Kind::InitiallySeparable)
    throw std::invalid_argument(
        "detect_sudden_events: state carries no entanglement to lose");
  const double q_s = outcome.finite() ? outcome.q_s : 1.0;

  if (t_grid.size() < 2)
    throw std::invalid_argument("detect_sudden_events: need at least 2 grid times");
  if (!(t_grid.front() >= 0.0))
    throw std::invalid_argument("detect_sudden_events: times must be non-negative");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i + 1] > t_grid[i]))
      throw std::invalid_argument("detect_sudden_events: t_grid must ascend strictly");

  // Entanglement is present exactly while q(t) < q_S.
  const auto dead = [&](double t) { return profile.q_at(t) >= q_s; };
  const double span = t_grid.back() - t_grid.front();
  const double tol = std::max(1e-13, 1e-10 * span);
  constexpr int kSub = 16;

  std::vector<SuddenEvent> events;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double t0 = t_grid[i];
    const double dt = (t_grid[i + 1] - t0) / kSub;
    int found_here = 0;
    bool prev = dead(t0);
    for (int k = 0; k < kSub; ++k) {
      const double a = t0 + k * dt;
      const double b = t0 + (k + 1) * dt;
      const bool cur = dead(b);
      if (cur != prev) {
        double lo = a, hi = b;
        while (hi - lo > tol) {
          const double mid = 0.5 * (lo + hi);
          (dead(mid) == prev ? lo : hi) = mid;
        }
        SuddenEvent ev;
        ev.time = 0.5 * (lo + hi);
        ev.kind = cur ? SuddenEvent::Kind::Death : SuddenEvent::Kind::Birth;
        events.push_back(ev);
        ++found_here;
      }
      prev = cur;
    }
    if (found_here >= 2)
      throw accuracy_error(
          "detect_sudden_events: two crossings inside one t_grid interval; "
          "refine the time grid to separate them",
          0.5 * (t0 + t_grid[i + 1]), t_grid[i + 1] - t0);
  }
  return events;
}

}  // namespace qdecay
