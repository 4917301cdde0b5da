#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdecay/channels.hpp"
#include "qdecay/ensembles.hpp"
#include "qdecay/parallel.hpp"

namespace qdecay {

std::vector<double> evolved_concurrences(ChannelKind kind, double q,
                                         const std::vector<PureState>& states,
                                         SideSpec side, int workers) {
  std::vector<double> out(states.size());
  parallel_for(states.size(), workers, [&](std::size_t i) {
    out[i] = side == SideSpec::BothQubits
                 ? concurrence_evolved(kind, q, states[i])
                 : concurrence_single(kind, q, concurrence_pure(states[i]));
  });
  return out;
}

std::vector<double> evolved_concurrences(ChannelKind kind, double q,
                                         const std::vector<DensityMatrix>& states,
                                         SideSpec side, int workers) {
  std::vector<double> out(states.size());
  parallel_for(states.size(), workers, [&](std::size_t i) {
    out[i] = concurrence_mixed(apply_local(states[i], kind, q, side));
  });
  return out;
}

EnsembleStats stats_from_values(const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("stats_from_values: empty value list");
  EnsembleStats st;
  st.n = values.size();
  double sum = 0.0;
  std::size_t sep = 0;
  for (double v : values) {
    sum += v;
    if (v <= 1e-12) ++sep;
    st.max_seen = std::max(st.max_seen, v);
  }
  st.mean = sum / static_cast<double>(st.n);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - st.mean;
    ss += d * d;
  }
  st.std = std::sqrt(std::max(0.0, ss / static_cast<double>(st.n)));
  st.separable_fraction = static_cast<double>(sep) / static_cast<double>(st.n);
  return st;
}

EnsembleStats ensemble_stats(ChannelKind kind, double q,
                             const std::vector<PureState>& states, SideSpec side,
                             int workers) {
  return stats_from_values(evolved_concurrences(kind, q, states, side, workers));
}

EnsembleStats ensemble_stats(ChannelKind kind, double q,
                             const std::vector<DensityMatrix>& states,
                             SideSpec side, int workers) {
  return stats_from_values(evolved_concurrences(kind, q, states, side, workers));
}

EsdSampleSet esd_samples_numeric(const std::vector<DensityMatrix>& states,
                                 ChannelKind kind, double tol, SideSpec side,
                                 int workers) {
  std::vector<EsdOutcome> outcomes(states.size());
  parallel_for(states.size(), workers, [&](std::size_t i) {
    outcomes[i] = esd_time_bisect(states[i], kind, tol, side);
  });
  EsdSampleSet set;
  for (const EsdOutcome& o : outcomes) {
    switch (o.kind) {
      case EsdOutcome::Kind::FiniteTime: set.finite.push_back(o.q_s); break;
      case EsdOutcome::Kind::AsymptoticOnly: ++set.asymptotic; break;
      case EsdOutcome::Kind::InitiallySeparable: ++set.separable; break;
    }
  }
  return set;
}

DensityCurve empirical_density(const std::vector<double>& samples, int bins,
                               double lo, double hi, std::size_t censored_at_hi) {
  if (bins < 2) throw std::invalid_argument("empirical_density: need bins >= 2");
  if (!(hi > lo)) throw std::invalid_argument("empirical_density: need lo < hi");
  const std::size_t n_total = samples.size() + censored_at_hi;
  if (n_total == 0) throw std::invalid_argument("empirical_density: no observations");
  for (double x : samples)
    if (!(x >= lo && x <= hi))
      throw std::invalid_argument("empirical_density: sample outside [lo, hi]");

  DensityCurve out;
  out.lo = lo;
  out.hi = hi;
  const double weight = 1.0 / static_cast<double>(n_total);

  if (censored_at_hi > 0)
    out.point_masses.emplace_back(hi, static_cast<double>(censored_at_hi) * weight);

  bool flat_curve = samples.empty();
  if (!samples.empty()) {
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    if (*mn == *mx) {
      // Zero spread: the histogram degenerates, keep everything in one atom.
      flat_curve = true;
      if (!out.point_masses.empty() && out.point_masses.front().first == *mn)
        out.point_masses.front().second += static_cast<double>(samples.size()) * weight;
      else
        out.point_masses.emplace_back(*mn, static_cast<double>(samples.size()) * weight);
    }
  }

  if (flat_curve) {
    out.grid = {lo, hi};
    out.values = {0.0, 0.0};
    return out;
  }

  const double h = (hi - lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : samples) {
    auto idx = static_cast<std::size_t>((x - lo) / h);
    idx = std::min(idx, static_cast<std::size_t>(bins - 1));
    ++counts[idx];
  }
  // Bin-center grid with flat half-bin extensions: the trapezoid rule then
  // integrates each bin to exactly count/n_total.
  out.grid.reserve(static_cast<std::size_t>(bins) + 2);
  out.values.reserve(static_cast<std::size_t>(bins) + 2);
  out.grid.push_back(lo);
  out.values.push_back(static_cast<double>(counts.front()) * weight / h);
  for (int b = 0; b < bins; ++b) {
    out.grid.push_back(lo + (b + 0.5) * h);
    out.values.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) *
                         weight / h);
  }
  out.grid.push_back(hi);
  out.values.push_back(static_cast<double>(counts.back()) * weight / h);
  return out;
}

}  // namespace qdecay
