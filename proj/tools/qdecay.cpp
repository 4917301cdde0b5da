// qdecay command line: ensemble jobs, density evaluation and figure
// reproduction for two-qubit entanglement decay under local noise.
//
// Subcommands write CSV (or JSON) files plus optional SVG plots. All output
// is deterministic for a fixed seed and independent of --workers.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdecay/channels.hpp"
#include "qdecay/ensembles.hpp"
#include "qdecay/entanglement.hpp"
#include "qdecay/errors.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/qstate.hpp"
#include "qdecay/serialize.hpp"
#include "qdecay/timemaps.hpp"
#include "qdecay/version.hpp"
#include "svgplot.hpp"

namespace {

using namespace qdecay;

constexpr double kPi = 3.14159265358979323846;

enum class Measure { HaarPure, HSMixed, BuresMixed };

ChannelKind parse_kind(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "d" || s == "depolarizing") return ChannelKind::Depolarizing;
  if (s == "ad" || s == "amplitude-damping") return ChannelKind::AmplitudeDamping;
  if (s == "pd" || s == "phase-damping") return ChannelKind::PhaseDamping;
  throw std::invalid_argument("unknown channel kind: " + s);
}

Measure parse_measure(const std::string& s) {
  if (s == "haar") return Measure::HaarPure;
  if (s == "hs") return Measure::HSMixed;
  if (s == "bures") return Measure::BuresMixed;
  throw std::invalid_argument("unknown measure: " + s);
}

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::HaarPure: return "haar";
    case Measure::HSMixed: return "hs";
    case Measure::BuresMixed: return "bures";
  }
  return "?";
}

SideSpec parse_side(const std::string& s) {
  if (s == "both") return SideSpec::BothQubits;
  if (s == "first") return SideSpec::FirstOnly;
  throw std::invalid_argument("unknown side: " + s);
}

// Grid specs are "lo:hi:count" with count >= 2, or a single number.
std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {std::stod(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("grid spec must be lo:hi:count");
  const double lo = std::stod(spec.substr(0, c1));
  const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  const long count = std::stol(spec.substr(c2 + 1));
  if (count < 2 || !(hi > lo))
    throw std::invalid_argument("grid spec needs hi > lo and count >= 2");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) /
                                             static_cast<double>(count - 1);
  grid.back() = hi;
  return grid;
}

bool valid_grid_format(const std::string& spec) {
  try {
    parse_grid(spec);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  grid.back() = hi;
  return grid;
}

// --state takes 4 comma-separated reals, or 8 as re,im pairs.
PureState parse_state(const std::string& spec) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto next = spec.find(',', pos);
    const std::string piece =
        spec.substr(pos, next == std::string::npos ? next : next - pos);
    if (!piece.empty()) vals.push_back(std::stod(piece));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  std::array<cplx, 4> amp;
  if (vals.size() == 4) {
    for (int i = 0; i < 4; ++i) amp[static_cast<std::size_t>(i)] = cplx(vals[static_cast<std::size_t>(i)], 0.0);
  } else if (vals.size() == 8) {
    for (int i = 0; i < 4; ++i)
      amp[static_cast<std::size_t>(i)] = cplx(vals[static_cast<std::size_t>(2 * i)], vals[static_cast<std::size_t>(2 * i + 1)]);
  } else {
    throw std::invalid_argument("--state needs 4 reals or 8 re,im values");
  }
  return PureState::normalized(amp);
}

PureState bell_state() {
  const double a = 1.0 / std::sqrt(2.0);
  return PureState::normalized({cplx(a, 0), cplx(0, 0), cplx(0, 0), cplx(a, 0)});
}

// Output naming: --out keeps an explicit .csv/.json extension (which also
// selects the format); anything else is a stem that gets ".csv"/".json"
// appended. SVG output replaces the extension with ".svg".
struct OutFiles {
  std::string stem;
  std::string format = "csv";
  bool plot = false;

  std::string data_path() const { return stem + "." + format; }
  std::string svg_path() const { return stem + ".svg"; }
};

OutFiles resolve_out(std::string out, std::string format, bool plot,
                     const std::string& default_stem) {
  OutFiles f;
  f.plot = plot;
  if (out.empty()) out = default_stem;
  if (out.size() > 4 && out.substr(out.size() - 4) == ".csv") {
    f.stem = out.substr(0, out.size() - 4);
    f.format = "csv";
  } else if (out.size() > 5 && out.substr(out.size() - 5) == ".json") {
    f.stem = out.substr(0, out.size() - 5);
    f.format = "json";
  } else {
    f.stem = out;
    f.format = format;
  }
  return f;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  stream.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!stream.good()) throw std::runtime_error("cannot write " + path);
  std::printf("wrote %s\n", path.c_str());
}

std::string table_to_json(const Table& table, const CurveMeta& meta) {
  nlohmann::json j;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  j["notes"] = table.comments;
  nlohmann::json m;
  m["kind"] = meta.kind;
  if (std::isfinite(meta.q)) m["q"] = meta.q;
  m["n"] = meta.n;
  m["seed"] = meta.seed;
  m["version"] = version_string;
  j["meta"] = m;
  return j.dump() + "\n";
}

void emit_table(const OutFiles& out, const Table& table, const CurveMeta& meta) {
  if (out.format == "json")
    write_file(out.data_path(), table_to_json(table, meta));
  else
    write_file(out.data_path(), table_to_csv(table, meta));
}

// Continuous separation-point density extended by zero outside the open
// domain (the closed forms exclude q_s = 0 for amplitude damping and
// q_s = 1 for phase damping; both limits vanish).
double analytic_qs(ChannelKind kind, double q) {
  switch (kind) {
    case ChannelKind::Depolarizing:
      return q > qs_domain_max(kind) ? 0.0 : p_qs(kind, q).density;
    case ChannelKind::AmplitudeDamping:
      return q <= 0.0 ? 0.0 : p_qs(kind, q).density;
    case ChannelKind::PhaseDamping:
      return q >= 1.0 ? 0.0 : p_qs(kind, q).density;
  }
  return 0.0;
}

constexpr double kAdDeltaWeight = (2.0 + kPi) / 8.0;

DensityCurve analytic_qs_curve(ChannelKind kind, std::size_t points) {
  DensityCurve curve;
  curve.lo = 0.0;
  curve.hi = qs_domain_max(kind);
  curve.grid = linspace(curve.lo, curve.hi, points);
  curve.values.reserve(points);
  for (double q : curve.grid) curve.values.push_back(analytic_qs(kind, q));
  if (kind == ChannelKind::AmplitudeDamping)
    curve.point_masses.emplace_back(1.0, kAdDeltaWeight);
  return curve;
}

// Concurrence density at strength q; the single-channel variant is the
// initial density squeezed by the concurrence scale factor x(q).
double analytic_conc(ChannelKind kind, SideSpec side, double c, double q) {
  if (side == SideSpec::BothQubits) return p_c(kind, c, q);
  const double x = concurrence_single(kind, q, 1.0);
  if (x <= 0.0 || c >= x) return 0.0;
  return p_c0(c / x) / x;
}

// Histogram of separation points normalized over the whole ensemble:
// asymptotic outcomes sit censored at hi, initially separable ones in an
// atom at 0.
DensityCurve esd_empirical(std::vector<double> finite, std::size_t asymptotic,
                           std::size_t separable, int bins, double hi) {
  const std::size_t n = finite.size() + asymptotic + separable;
  if (n == 0) throw std::invalid_argument("esd_empirical: no samples");
  for (double& v : finite) v = std::clamp(v, 0.0, hi);
  DensityCurve curve;
  if (finite.size() + asymptotic > 0) {
    curve = empirical_density(finite, bins, 0.0, hi, asymptotic);
    const double scale = static_cast<double>(finite.size() + asymptotic) /
                         static_cast<double>(n);
    if (scale < 1.0) {
      for (double& v : curve.values) v *= scale;
      for (auto& m : curve.point_masses) m.second *= scale;
    }
  } else {
    curve.grid = {0.0, hi};
    curve.values = {0.0, 0.0};
    curve.lo = 0.0;
    curve.hi = hi;
  }
  if (separable > 0)
    curve.point_masses.insert(curve.point_masses.begin(),
                              {0.0, static_cast<double>(separable) / static_cast<double>(n)});
  return curve;
}

// Concurrence histogram with the separable weight (values <= 1e-12) in an
// atom at 0.
DensityCurve conc_empirical(const std::vector<double>& values, int bins, double hi) {
  std::vector<double> positive;
  positive.reserve(values.size());
  std::size_t zeros = 0;
  for (double v : values) {
    if (v <= 1e-12) ++zeros;
    else positive.push_back(std::min(v, hi));
  }
  const std::size_t n = values.size();
  DensityCurve curve;
  if (!positive.empty()) {
    curve = empirical_density(positive, bins, 0.0, hi);
    const double scale = static_cast<double>(positive.size()) / static_cast<double>(n);
    if (scale < 1.0) {
      for (double& v : curve.values) v *= scale;
      for (auto& m : curve.point_masses) m.second *= scale;
    }
  } else {
    curve.grid = {0.0, hi};
    curve.values = {0.0, 0.0};
    curve.lo = 0.0;
    curve.hi = hi;
  }
  if (zeros > 0)
    curve.point_masses.insert(curve.point_masses.begin(),
                              {0.0, static_cast<double>(zeros) / static_cast<double>(n)});
  return curve;
}

// Linear resampling of a curve; outside the grid the edge value extends flat.
double interp_curve(const DensityCurve& curve, double x) {
  const auto& g = curve.grid;
  const auto& v = curve.values;
  if (x <= g.front()) return v.front();
  if (x >= g.back()) return v.back();
  const auto it = std::upper_bound(g.begin(), g.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - g.begin());
  const double w = (x - g[k - 1]) / (g[k] - g[k - 1]);
  return v[k - 1] + w * (v[k] - v[k - 1]);
}

// Tables that carry an analytic column get extra nodes between the histogram
// edges, enough for a trapezoid over the file to track square-root and
// logarithmic features to ~1e-4. The histogram column is piecewise linear,
// so resampling it onto the finer grid leaves its integral unchanged.
std::vector<double> refine_grid(const std::vector<double>& grid, int parts) {
  std::vector<double> fine;
  fine.reserve((grid.size() - 1) * parts + 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    for (int j = 0; j < parts; ++j)
      fine.push_back(grid[i] +
                     (grid[i + 1] - grid[i]) * static_cast<double>(j) / parts);
  fine.push_back(grid.back());
  return fine;
}

void add_mass_comments(Table& table, const char* column, const DensityCurve& curve) {
  for (const auto& [loc, w] : curve.point_masses)
    table.comments.push_back(std::string("mass,") + column + "," + format_double(loc) +
                             "," + format_double(w));
}

QProfile profile_from_flags(const std::string& name, double gamma, double gamma_env,
                            double gamma_rate, double lambda, double gamma0,
                            double omega, double coupling, double temperature,
                            bool conventional) {
  if (name == "markov") return QProfile::markov(gamma);
  if (name == "nonautonomous") return QProfile::nonautonomous(gamma_env, gamma_rate);
  if (name == "pseudomode") return QProfile::pseudomode(lambda, gamma0);
  if (name == "ohmic") return QProfile::ohmic(lambda, temperature, conventional);
  if (name == "oscillator")
    return QProfile::oscillator(omega, coupling, temperature, conventional);
  throw std::invalid_argument("unknown profile kind: " + name);
}

std::vector<PureState> cli_sample_pure(std::uint64_t seed, std::size_t n) {
  return sample_haar_pure({seed, 0}, n);
}

std::vector<DensityMatrix> cli_sample_mixed(Measure measure, std::uint64_t seed,
                                            std::size_t n) {
  if (measure == Measure::HSMixed) return sample_hs_mixed({seed, 0}, n);
  return sample_bures_mixed({seed, 0}, n);
}

void check_job_limits(std::size_t n, int bins) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (bins < 2) throw std::invalid_argument("need bins >= 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistics of two-qubit entanglement decay under local noise"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  bool full = false;
  app.add_flag("--full", full,
               "use n = 10^6 where --n is not given (default n = 10^5)");

  std::function<int()> job;

  const auto kind_check = CLI::IsMember(
      {"d", "ad", "pd", "depolarizing", "amplitude-damping", "phase-damping"},
      CLI::ignore_case);
  const auto measure_check = CLI::IsMember({"haar", "hs", "bures"});
  const auto side_check = CLI::IsMember({"both", "first"});
  const auto format_check = CLI::IsMember({"csv", "json"});
  const auto grid_check = CLI::Validator(
      [](std::string& s) {
        return valid_grid_format(s) ? std::string()
                                    : "expected lo:hi:count, got '" + s + "'";
      },
      "GRID");

  // sample: draw initial states, write per-state concurrences.
  {
    auto* cmd = app.add_subcommand("sample", "draw initial states and tabulate them");
    struct SampleOpts {
      std::string measure = "haar";
      std::size_t n = 100000;
      std::uint64_t seed = 1;
      int workers = 0;
      std::string out, format = "csv";
      bool plot = false;
    };
    auto opts = std::make_shared<SampleOpts>();
    cmd->add_option("--measure", opts->measure, "haar | hs | bures")->check(measure_check);
    auto* n_opt = cmd->add_option("--n", opts->n, "ensemble size");
    cmd->add_option("--seed", opts->seed, "ensemble seed");
    cmd->add_option("--workers", opts->workers, "worker threads")
        ->envname("QDECAY_WORKERS");
    cmd->add_option("--out", opts->out, "output path or stem (default: sample)");
    cmd->add_option("--format", opts->format, "csv | json")->check(format_check);
    cmd->add_flag("--plot", opts->plot, "also write an SVG histogram");
    cmd->callback([&, opts, n_opt] {
      job = [&, opts, n_opt]() -> int {
        const std::size_t n = (full && n_opt->count() == 0) ? 1000000 : opts->n;
        check_job_limits(n, 2);
        const Measure measure = parse_measure(opts->measure);
        const int workers = opts->workers > 0 ? opts->workers : default_workers();
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "sample");

        Table table;
        std::vector<double> conc(n);
        if (measure == Measure::HaarPure) {
          const auto states = cli_sample_pure(opts->seed, n);
          table.columns = {"i", "re00", "im00", "re01", "im01",
                           "re10", "im10", "re11", "im11", "c0"};
          table.rows.assign(n, {});
          parallel_for(n, workers, [&](std::size_t i) {
            conc[i] = concurrence_pure(states[i]);
            std::vector<double> row{static_cast<double>(i)};
            for (int a = 0; a < 4; ++a) {
              row.push_back(states[i][a].real());
              row.push_back(states[i][a].imag());
            }
            row.push_back(conc[i]);
            table.rows[i] = std::move(row);
          });
        } else {
          const auto states = cli_sample_mixed(measure, opts->seed, n);
          table.columns = {"i", "purity", "c0"};
          table.rows.assign(n, {});
          parallel_for(n, workers, [&](std::size_t i) {
            conc[i] = concurrence_mixed(states[i]);
            table.rows[i] = {static_cast<double>(i), states[i].purity(), conc[i]};
          });
        }
        const EnsembleStats stats = stats_from_values(conc);
        table.comments.push_back("mean_c0," + format_double(stats.mean));
        table.comments.push_back("std_c0," + format_double(stats.std));
        table.comments.push_back("separable_fraction," +
                                 format_double(stats.separable_fraction));

        CurveMeta meta{measure_name(measure), std::numeric_limits<double>::quiet_NaN(),
                       n, opts->seed};
        emit_table(out, table, meta);
        if (out.plot) {
          const DensityCurve hist = conc_empirical(conc, 64, 1.0);
          svgplot::Plot plot("initial concurrence", "C", "density");
          plot.add_line(hist.grid, hist.values, "empirical");
          if (measure == Measure::HaarPure) {
            const auto grid = linspace(0.0, 1.0, 257);
            std::vector<double> vals;
            for (double c : grid) vals.push_back(p_c0(c));
            plot.add_line(grid, vals, "3C sqrt(1-C^2)", true);
          }
          for (const auto& [loc, w] : hist.point_masses) plot.add_stem(loc, w);
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        std::printf("n %zu mean_c0 %s\n", n, format_double(stats.mean).c_str());
        return 0;
      };
    });
  }

  // evolve: one state through a q grid, closed form next to the Kraus oracle.
  {
    auto* cmd = app.add_subcommand("evolve", "evolve a single state through a q grid");
    struct EvolveOpts {
      std::string kind = "d";
      std::string side = "both";
      std::string state;
      std::string q_grid = "0:1:101";
      std::string out, format = "csv";
      bool plot = false;
    };
    auto opts = std::make_shared<EvolveOpts>();
    cmd->add_option("--kind", opts->kind, "d | ad | pd")->check(kind_check);
    cmd->add_option("--side", opts->side, "both | first")->check(side_check);
    cmd->add_option("--state", opts->state,
                    "4 reals or 8 re,im amplitudes |00>,|01>,|10>,|11> (default Bell)");
    cmd->add_option("--q-grid", opts->q_grid, "lo:hi:count")->check(grid_check);
    cmd->add_option("--out", opts->out, "output path or stem (default: evolve)");
    cmd->add_option("--format", opts->format, "csv | json")->check(format_check);
    cmd->add_flag("--plot", opts->plot, "also write an SVG of the curves");
    cmd->callback([&, opts] {
      job = [&, opts]() -> int {
        const ChannelKind kind = parse_kind(opts->kind);
        const SideSpec side = parse_side(opts->side);
        const PureState psi = opts->state.empty() ? bell_state() : parse_state(opts->state);
        const double c0 = concurrence_pure(psi);
        const std::vector<double> grid = parse_grid(opts->q_grid);
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "evolve");
        const DensityMatrix rho = DensityMatrix::from_pure(psi);

        Table table;
        table.columns = {"q", "c_closed", "c_kraus", "c_max"};
        for (double q : grid) {
          const double closed = side == SideSpec::BothQubits
                                    ? concurrence_evolved(kind, q, psi)
                                    : concurrence_single(kind, q, c0);
          const double kraus = concurrence_mixed(apply_local(rho, kind, q, side));
          const double cm = side == SideSpec::BothQubits
                                ? max_concurrence(kind, q)
                                : concurrence_single(kind, q, 1.0);
          table.rows.push_back({q, closed, kraus, cm});
        }
        table.comments.push_back("c0," + format_double(c0));

        CurveMeta meta{channel_name(kind), std::numeric_limits<double>::quiet_NaN(), 1, 0};
        emit_table(out, table, meta);
        if (out.plot) {
          std::vector<double> x, closed, cm;
          for (const auto& row : table.rows) {
            x.push_back(row[0]);
            closed.push_back(row[1]);
            cm.push_back(row[3]);
          }
          svgplot::Plot plot(std::string("concurrence under ") + channel_name(kind),
                             "q", "C");
          plot.add_line(x, closed, "state");
          plot.add_line(x, cm, "maximum", true);
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        return 0;
      };
    });
  }

  // density esd | conc: analytic and empirical curves side by side.
  {
    auto* cmd = app.add_subcommand("density", "separation-point or concurrence density");
    cmd->require_subcommand(1);
    struct DensityOpts {
      std::string kind = "d";
      std::string measure = "haar";
      std::string side = "both";
      std::size_t n = 100000;
      std::uint64_t seed = 1;
      int bins = 64;
      int workers = 0;
      double q = -1.0;
      double tol = 1e-6;
      std::string out, format = "csv";
      bool plot = false;
    };
    auto opts = std::make_shared<DensityOpts>();

    auto add_common = [&](CLI::App* sub) -> CLI::Option* {
      sub->add_option("--kind", opts->kind, "d | ad | pd")->check(kind_check);
      sub->add_option("--measure", opts->measure, "haar | hs | bures")->check(measure_check);
      sub->add_option("--side", opts->side, "both | first")->check(side_check);
      CLI::Option* n_opt = sub->add_option("--n", opts->n, "ensemble size");
      sub->add_option("--seed", opts->seed, "ensemble seed");
      sub->add_option("--bins", opts->bins, "histogram bins");
      sub->add_option("--workers", opts->workers, "worker threads")
          ->envname("QDECAY_WORKERS");
      sub->add_option("--out", opts->out, "output path or stem");
      sub->add_option("--format", opts->format, "csv | json")->check(format_check);
      sub->add_flag("--plot", opts->plot, "also write an SVG of the curves");
      return n_opt;
    };

    auto* esd = cmd->add_subcommand("esd", "separation-point density");
    esd->add_option("--tol", opts->tol, "bisection tolerance for mixed ensembles");
    auto* esd_n = add_common(esd);
    esd->callback([&, opts, esd_n] {
      job = [&, opts, esd_n]() -> int {
        const std::size_t n = (full && esd_n->count() == 0) ? 1000000 : opts->n;
        check_job_limits(n, opts->bins);
        const ChannelKind kind = parse_kind(opts->kind);
        const Measure measure = parse_measure(opts->measure);
        const SideSpec side = parse_side(opts->side);
        const int workers = opts->workers > 0 ? opts->workers : default_workers();
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "density_esd");

        std::vector<double> finite;
        std::size_t asymptotic = 0, separable = 0;
        if (measure == Measure::HaarPure) {
          const auto states = cli_sample_pure(opts->seed, n);
          finite.reserve(n);
          if (side == SideSpec::BothQubits) {
            for (const auto& psi : states) {
              const EsdOutcome o = esd_time_analytic(kind, psi);
              if (o.kind == EsdOutcome::Kind::FiniteTime) finite.push_back(o.q_s);
              else if (o.kind == EsdOutcome::Kind::AsymptoticOnly) ++asymptotic;
              else ++separable;
            }
          } else {
            // One noisy qubit: concurrence scales by x(q), so everything
            // separates together where x hits zero (depolarizing, q = 2/3)
            // or never does (damping channels).
            for (const auto& psi : states) {
              if (concurrence_pure(psi) <= 1e-12) ++separable;
              else if (kind == ChannelKind::Depolarizing) finite.push_back(2.0 / 3.0);
              else ++asymptotic;
            }
          }
        } else {
          const auto states = cli_sample_mixed(measure, opts->seed, n);
          const EsdSampleSet set = esd_samples_numeric(states, kind, opts->tol, side, workers);
          finite = set.finite;
          asymptotic = set.asymptotic;
          separable = set.separable;
        }

        const bool both_haar =
            measure == Measure::HaarPure && side == SideSpec::BothQubits;
        const double hi = (side == SideSpec::BothQubits) ? qs_domain_max(kind) : 1.0;
        const DensityCurve empirical =
            esd_empirical(finite, asymptotic, separable, opts->bins, hi);

        Table table;
        table.columns = both_haar ? std::vector<std::string>{"q_s", "analytic", "empirical"}
                                  : std::vector<std::string>{"q_s", "empirical"};
        DensityCurve analytic;
        if (both_haar) {
          analytic.lo = 0.0;
          analytic.hi = hi;
          analytic.grid = refine_grid(empirical.grid, 8);
          for (double q : analytic.grid)
            analytic.values.push_back(analytic_qs(kind, q));
          if (kind == ChannelKind::AmplitudeDamping)
            analytic.point_masses.emplace_back(1.0, kAdDeltaWeight);
          add_mass_comments(table, "analytic", analytic);
        }
        add_mass_comments(table, "empirical", empirical);
        if (both_haar) {
          for (std::size_t i = 0; i < analytic.grid.size(); ++i)
            table.rows.push_back({analytic.grid[i], analytic.values[i],
                                  interp_curve(empirical, analytic.grid[i])});
        } else {
          for (std::size_t i = 0; i < empirical.grid.size(); ++i)
            table.rows.push_back({empirical.grid[i], empirical.values[i]});
        }

        CurveMeta meta{channel_name(kind), std::numeric_limits<double>::quiet_NaN(),
                       n, opts->seed};
        emit_table(out, table, meta);
        std::printf("finite %zu asymptotic %zu separable %zu\n", finite.size(),
                    asymptotic, separable);
        if (both_haar) {
          std::vector<double> with_censored = finite;
          with_censored.insert(with_censored.end(), asymptotic, 1.0);
          const double ks = ks_distance(std::move(with_censored), analytic);
          std::printf("analytic_mass %s ks %s\n",
                      format_double(analytic.total_mass()).c_str(),
                      format_double(ks).c_str());
        }
        if (out.plot) {
          svgplot::Plot plot(std::string("separation point, ") + channel_name(kind),
                             "q_s", "density");
          plot.add_line(empirical.grid, empirical.values, "empirical");
          if (both_haar) plot.add_line(analytic.grid, analytic.values, "analytic", true);
          for (const auto& [loc, w] : empirical.point_masses) plot.add_stem(loc, w);
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        return 0;
      };
    });

    auto* conc = cmd->add_subcommand("conc", "concurrence density at fixed q");
    conc->add_option("--q", opts->q, "channel strength")->required();
    auto* conc_n = add_common(conc);
    conc->callback([&, opts, conc_n] {
      job = [&, opts, conc_n]() -> int {
        const std::size_t n = (full && conc_n->count() == 0) ? 1000000 : opts->n;
        check_job_limits(n, opts->bins);
        const ChannelKind kind = parse_kind(opts->kind);
        const Measure measure = parse_measure(opts->measure);
        const SideSpec side = parse_side(opts->side);
        const double q = opts->q;
        if (!(q >= 0.0 && q <= 1.0))
          throw std::domain_error("--q must lie in [0, 1]");
        const int workers = opts->workers > 0 ? opts->workers : default_workers();
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "density_conc");

        std::vector<double> values;
        if (measure == Measure::HaarPure)
          values = evolved_concurrences(kind, q, cli_sample_pure(opts->seed, n), side, workers);
        else
          values = evolved_concurrences(kind, q, cli_sample_mixed(measure, opts->seed, n),
                                        side, workers);

        const double cm = side == SideSpec::BothQubits ? max_concurrence(kind, q)
                                                       : concurrence_single(kind, q, 1.0);
        const double hi = cm > 1e-12 ? cm : 1.0;
        const DensityCurve empirical = conc_empirical(values, opts->bins, hi);

        const bool analytic_known = measure == Measure::HaarPure && q < 1.0;
        Table table;
        table.columns = analytic_known
                            ? std::vector<std::string>{"c", "analytic", "empirical"}
                            : std::vector<std::string>{"c", "empirical"};
        DensityCurve analytic;
        if (analytic_known) {
          analytic.lo = 0.0;
          analytic.hi = hi;
          analytic.grid = refine_grid(empirical.grid, 8);
          for (double c : analytic.grid)
            analytic.values.push_back(analytic_conc(kind, side, c, q));
          // The separable weight is whatever the continuous part leaves
          // over; the trapezoid on the output grid keeps the file summing
          // to one exactly.
          const double atom = 1.0 - trapezoid(analytic.grid, analytic.values);
          if (atom > 1e-9) analytic.point_masses.emplace_back(0.0, atom);
          add_mass_comments(table, "analytic", analytic);
        }
        add_mass_comments(table, "empirical", empirical);
        if (analytic_known) {
          for (std::size_t i = 0; i < analytic.grid.size(); ++i)
            table.rows.push_back({analytic.grid[i], analytic.values[i],
                                  interp_curve(empirical, analytic.grid[i])});
        } else {
          for (std::size_t i = 0; i < empirical.grid.size(); ++i)
            table.rows.push_back({empirical.grid[i], empirical.values[i]});
        }

        CurveMeta meta{channel_name(kind), q, n, opts->seed};
        emit_table(out, table, meta);
        if (analytic_known) {
          std::vector<double> sorted = values;
          const double ks = ks_distance(std::move(sorted), analytic);
          std::printf("ks %s\n", format_double(ks).c_str());
        }
        if (out.plot) {
          svgplot::Plot plot(std::string("concurrence density, ") + channel_name(kind) +
                                 " q=" + format_double(q),
                             "C", "density");
          plot.add_line(empirical.grid, empirical.values, "empirical");
          if (analytic_known) plot.add_line(analytic.grid, analytic.values, "analytic", true);
          for (const auto& [loc, w] : empirical.point_masses) plot.add_stem(loc, w);
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        return 0;
      };
    });
  }

  // stats: moments and extremes over a q grid.
  {
    auto* cmd = app.add_subcommand("stats", "ensemble statistics over a q grid");
    struct StatsOpts {
      std::string kind = "d";
      std::string measure = "haar";
      std::string side = "both";
      std::string q_grid = "0:0.9:19";
      std::size_t n = 100000;
      std::uint64_t seed = 1;
      int workers = 0;
      std::string out, format = "csv";
      bool plot = false;
    };
    auto opts = std::make_shared<StatsOpts>();
    cmd->add_option("--kind", opts->kind, "d | ad | pd")->check(kind_check);
    cmd->add_option("--measure", opts->measure, "haar | hs | bures")->check(measure_check);
    cmd->add_option("--side", opts->side, "both | first")->check(side_check);
    cmd->add_option("--q-grid", opts->q_grid, "lo:hi:count")->check(grid_check);
    auto* n_opt = cmd->add_option("--n", opts->n, "ensemble size");
    cmd->add_option("--seed", opts->seed, "ensemble seed");
    cmd->add_option("--workers", opts->workers, "worker threads")
        ->envname("QDECAY_WORKERS");
    cmd->add_option("--out", opts->out, "output path or stem (default: stats)");
    cmd->add_option("--format", opts->format, "csv | json")->check(format_check);
    cmd->add_flag("--plot", opts->plot, "also write an SVG of mean and maximum");
    cmd->callback([&, opts, n_opt] {
      job = [&, opts, n_opt]() -> int {
        const std::size_t n = (full && n_opt->count() == 0) ? 1000000 : opts->n;
        check_job_limits(n, 2);
        const ChannelKind kind = parse_kind(opts->kind);
        const Measure measure = parse_measure(opts->measure);
        const SideSpec side = parse_side(opts->side);
        const std::vector<double> grid = parse_grid(opts->q_grid);
        const int workers = opts->workers > 0 ? opts->workers : default_workers();
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "stats");

        std::vector<PureState> pure;
        std::vector<DensityMatrix> mixed;
        if (measure == Measure::HaarPure) pure = cli_sample_pure(opts->seed, n);
        else mixed = cli_sample_mixed(measure, opts->seed, n);

        Table table;
        table.columns = {"q", "mean", "std", "separable_fraction", "survival",
                         "max_seen", "c_max"};
        for (double q : grid) {
          const EnsembleStats s = measure == Measure::HaarPure
                                      ? ensemble_stats(kind, q, pure, side, workers)
                                      : ensemble_stats(kind, q, mixed, side, workers);
          const double cm = side == SideSpec::BothQubits
                                ? max_concurrence(kind, q)
                                : concurrence_single(kind, q, 1.0);
          table.rows.push_back({q, s.mean, s.std, s.separable_fraction,
                                1.0 - s.separable_fraction, s.max_seen, cm});
        }

        CurveMeta meta{channel_name(kind), std::numeric_limits<double>::quiet_NaN(),
                       n, opts->seed};
        emit_table(out, table, meta);
        if (out.plot) {
          std::vector<double> x, mean, cmax;
          for (const auto& row : table.rows) {
            x.push_back(row[0]);
            mean.push_back(row[1]);
            cmax.push_back(row[6]);
          }
          svgplot::Plot plot(std::string("concurrence statistics, ") + channel_name(kind),
                             "q", "C");
          plot.add_line(x, mean, "mean");
          plot.add_line(x, cmax, "maximum", true);
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        return 0;
      };
    });
  }

  // profile: tabulate q(t) for a named time profile.
  {
    auto* cmd = app.add_subcommand("profile", "tabulate q(t) for a time profile");
    struct ProfileOpts {
      std::string kind = "markov";
      double gamma = 1.0, gamma_env = 1.0, gamma_rate = 1.0;
      double lambda = 1.0, gamma0 = 1.0, omega = 1.0, coupling = 1.0, temperature = 0.0;
      bool conventional = false;
      std::string t_grid = "0:10:201";
      std::string out, format = "csv";
      bool plot = false;
    };
    auto opts = std::make_shared<ProfileOpts>();
    cmd->add_option("--kind", opts->kind,
                    "markov | nonautonomous | pseudomode | ohmic | oscillator")
        ->check(CLI::IsMember({"markov", "nonautonomous", "pseudomode", "ohmic",
                               "oscillator"}));
    cmd->add_option("--gamma", opts->gamma, "markov decay rate");
    cmd->add_option("--gamma-env", opts->gamma_env, "nonautonomous switch-off rate");
    cmd->add_option("--gamma-rate", opts->gamma_rate, "nonautonomous generator rate");
    cmd->add_option("--lambda", opts->lambda, "environment width");
    cmd->add_option("--gamma0", opts->gamma0, "pseudomode relaxation rate");
    cmd->add_option("--omega", opts->omega, "oscillator frequency");
    cmd->add_option("--coupling", opts->coupling, "oscillator weight");
    cmd->add_option("--temperature", opts->temperature, "environment temperature");
    cmd->add_flag("--conventional-kernel", opts->conventional,
                  "dephasing kernel with the extra 1/omega");
    cmd->add_option("--t-grid", opts->t_grid, "lo:hi:count")->check(grid_check);
    cmd->add_option("--out", opts->out, "output path or stem (default: profile)");
    cmd->add_option("--format", opts->format, "csv | json")->check(format_check);
    cmd->add_flag("--plot", opts->plot, "also write an SVG of q(t)");
    cmd->callback([&, opts] {
      job = [&, opts]() -> int {
        QProfile profile = profile_from_flags(
            opts->kind, opts->gamma, opts->gamma_env, opts->gamma_rate, opts->lambda,
            opts->gamma0, opts->omega, opts->coupling, opts->temperature,
            opts->conventional);
        const std::vector<double> grid = parse_grid(opts->t_grid);
        const OutFiles out = resolve_out(opts->out, opts->format, opts->plot, "profile");

        if (out.format == "json") {
          // The JSON artifact carries the tabulated values alongside the
          // parameters, so reading it back reproduces q(t) without
          // re-deriving the kernel.
          for (double t : grid) profile.samples.emplace_back(t, profile.q_at(t));
          write_file(out.data_path(), profile_to_json(profile));
          profile.samples.clear();
        } else {
          write_file(out.data_path(), profile_to_csv(profile, grid));
        }
        std::printf("q_inf %s\n", format_double(profile.q_inf()).c_str());
        if (out.plot) {
          std::vector<double> qs;
          for (double t : grid) qs.push_back(profile.q_at(t));
          svgplot::Plot plot(std::string("q(t), ") + profile_name(profile.kind),
                             "t", "q");
          plot.add_line(grid, qs, profile_name(profile.kind));
          plot.write(out.svg_path());
          std::printf("wrote %s\n", out.svg_path().c_str());
        }
        return 0;
      };
    });
  }

  // events: sudden death and birth times along a profile.
  {
    auto* cmd = app.add_subcommand("events", "sudden death/birth times for one state");
    struct EventOpts {
      std::string kind = "ad";
      std::string profile = "pseudomode";
      std::string state;
      double gamma = 1.0, gamma_env = 1.0, gamma_rate = 1.0;
      double lambda = 1.0, gamma0 = 4.0, omega = 1.0, coupling = 1.0, temperature = 0.0;
      bool conventional = false;
      std::string t_grid = "0:12:481";
      std::string out, format = "csv";
    };
    auto opts = std::make_shared<EventOpts>();
    cmd->add_option("--kind", opts->kind, "d | ad | pd")->check(kind_check);
    cmd->add_option("--profile", opts->profile,
                    "markov | nonautonomous | pseudomode | ohmic | oscillator")
        ->check(CLI::IsMember({"markov", "nonautonomous", "pseudomode", "ohmic",
                               "oscillator"}));
    cmd->add_option("--state", opts->state,
                    "4 reals or 8 re,im amplitudes (default Bell)");
    cmd->add_option("--gamma", opts->gamma, "markov decay rate");
    cmd->add_option("--gamma-env", opts->gamma_env, "nonautonomous switch-off rate");
    cmd->add_option("--gamma-rate", opts->gamma_rate, "nonautonomous generator rate");
    cmd->add_option("--lambda", opts->lambda, "environment width");
    cmd->add_option("--gamma0", opts->gamma0, "pseudomode relaxation rate");
    cmd->add_option("--omega", opts->omega, "oscillator frequency");
    cmd->add_option("--coupling", opts->coupling, "oscillator weight");
    cmd->add_option("--temperature", opts->temperature, "environment temperature");
    cmd->add_flag("--conventional-kernel", opts->conventional,
                  "dephasing kernel with the extra 1/omega");
    cmd->add_option("--t-grid", opts->t_grid, "lo:hi:count")->check(grid_check);
    cmd->add_option("--out", opts->out, "output path or stem (default: events)");
    cmd->add_option("--format", opts->format, "csv | json")->check(format_check);
    cmd->callback([&, opts] {
      job = [&, opts]() -> int {
        const ChannelKind kind = parse_kind(opts->kind);
        const QProfile profile = profile_from_flags(
            opts->profile, opts->gamma, opts->gamma_env, opts->gamma_rate, opts->lambda,
            opts->gamma0, opts->omega, opts->coupling, opts->temperature,
            opts->conventional);
        const PureState psi = opts->state.empty() ? bell_state() : parse_state(opts->state);
        const std::vector<double> grid = parse_grid(opts->t_grid);
        const OutFiles out = resolve_out(opts->out, opts->format, false, "events");

        const EsdOutcome esd = esd_time_analytic(kind, psi);
        const auto events = detect_sudden_events(psi, kind, profile, grid);

        if (out.format == "json") {
          nlohmann::json j;
          j["kind"] = channel_name(kind);
          j["profile"] = profile_name(profile.kind);
          j["q_s"] = esd.finite() ? esd.q_s : 1.0;
          nlohmann::json list = nlohmann::json::array();
          for (const auto& e : events) {
            nlohmann::json entry;
            entry["time"] = e.time;
            entry["event"] = e.kind == SuddenEvent::Kind::Death ? "death" : "birth";
            list.push_back(entry);
          }
          j["events"] = list;
          j["version"] = version_string;
          write_file(out.data_path(), j.dump() + "\n");
        } else {
          std::string text = "time,event\n";
          text += std::string("# kind,") + channel_name(kind) + "\n";
          text += std::string("# profile,") + profile_name(profile.kind) + "\n";
          text += "# q_s," + format_double(esd.finite() ? esd.q_s : 1.0) + "\n";
          text += std::string("# version,") + version_string + "\n";
          for (const auto& e : events)
            text += format_double(e.time) + "," +
                    (e.kind == SuddenEvent::Kind::Death ? "death" : "birth") + "\n";
          write_file(out.data_path(), text);
        }
        std::printf("events %zu\n", events.size());
        return 0;
      };
    });
  }

  // figure 1..5: reproduce the survey figures as CSV + SVG.
  {
    auto* cmd = app.add_subcommand("figure", "write one of the five survey figures");
    struct FigureOpts {
      int which = 1;
      std::size_t n = 100000;
      std::uint64_t seed = 1;
      int bins = 64;
      int workers = 0;
      std::string out;
    };
    auto opts = std::make_shared<FigureOpts>();
    cmd->add_option("which", opts->which, "figure number 1..5")
        ->required()
        ->check(CLI::Range(1, 5));
    auto* n_opt = cmd->add_option("--n", opts->n, "ensemble size for the overlays");
    cmd->add_option("--seed", opts->seed, "ensemble seed");
    cmd->add_option("--bins", opts->bins, "histogram bins");
    cmd->add_option("--workers", opts->workers, "worker threads")
        ->envname("QDECAY_WORKERS");
    cmd->add_option("--out", opts->out, "output stem (default: figureN)");
    cmd->callback([&, opts, n_opt] {
      job = [&, opts, n_opt]() -> int {
        const std::size_t n = (full && n_opt->count() == 0) ? 1000000 : opts->n;
        check_job_limits(n, opts->bins);
        const int workers = opts->workers > 0 ? opts->workers : default_workers();
        const std::string stem =
            opts->out.empty() ? "figure" + std::to_string(opts->which) : opts->out;

        if (opts->which == 1) {
          // Separation-point densities of the three channels.
          svgplot::Plot plot("separation-point densities", "q_s", "density");
          for (ChannelKind kind :
               {ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping,
                ChannelKind::PhaseDamping}) {
            const std::size_t points =
                kind == ChannelKind::PhaseDamping ? 257 : 513;
            const DensityCurve curve = analytic_qs_curve(kind, points);
            CurveMeta meta{channel_name(kind),
                           std::numeric_limits<double>::quiet_NaN(), 0, 0};
            write_file(stem + "_" + channel_name(kind) + ".csv",
                       curve_to_csv(curve, meta));
            plot.add_line(curve.grid, curve.values, channel_name(kind));
            for (const auto& [loc, w] : curve.point_masses) plot.add_stem(loc, w);
          }
          plot.write(stem + ".svg");
          std::printf("wrote %s.svg\n", stem.c_str());
          return 0;
        }

        if (opts->which >= 2 && opts->which <= 4) {
          const ChannelKind kind = opts->which == 2   ? ChannelKind::Depolarizing
                                   : opts->which == 3 ? ChannelKind::AmplitudeDamping
                                                      : ChannelKind::PhaseDamping;
          const auto states = cli_sample_pure(opts->seed, n);

          Table table;
          table.columns = {"q", "mean", "std", "c_max"};
          const auto q_grid = linspace(0.0, 1.0, 101);
          for (double q : q_grid) {
            const EnsembleStats s =
                ensemble_stats(kind, q, states, SideSpec::BothQubits, workers);
            table.rows.push_back({q, s.mean, s.std, max_concurrence(kind, q)});
          }
          CurveMeta meta{channel_name(kind), std::numeric_limits<double>::quiet_NaN(),
                         n, opts->seed};
          write_file(stem + ".csv", table_to_csv(table, meta));

          // Densest-concurrence track; omitted for phase damping, where the
          // density maximum stays pinned near zero once the channel bites.
          Table peaks;
          std::vector<double> peak_q, peak_c;
          if (kind != ChannelKind::PhaseDamping) {
            peaks.columns = {"q", "peak_c"};
            for (double q : linspace(0.0, 0.96, 25)) {
              double best_c = 0.0, best_v = -1.0;
              const double cm = max_concurrence(kind, q);
              if (cm > 1e-9) {
                for (double c : linspace(cm / 128.0, cm * (1.0 - 1e-9), 64)) {
                  const double v = p_c(kind, c, q);
                  if (v > best_v) {
                    best_v = v;
                    best_c = c;
                  }
                }
              }
              peaks.rows.push_back({q, best_c});
              peak_q.push_back(q);
              peak_c.push_back(best_c);
            }
            write_file(stem + "_peak.csv", table_to_csv(peaks, meta));
          }

          // Concurrence densities at a few fixed strengths, analytic next
          // to the sampled histogram.
          std::vector<double> inset_q;
          if (kind == ChannelKind::Depolarizing) inset_q = {0.0, 0.2, 0.4};
          else if (kind == ChannelKind::AmplitudeDamping) inset_q = {0.0, 0.4, 0.8, 0.9};
          else inset_q = {0.0, 0.4, 0.57, 0.8};
          for (double q : inset_q) {
            const double cm = max_concurrence(kind, q);
            const auto values =
                evolved_concurrences(kind, q, states, SideSpec::BothQubits, workers);
            const DensityCurve hist = conc_empirical(values, opts->bins, cm);
            Table inset;
            inset.columns = {"c", "analytic", "empirical"};
            DensityCurve analytic;
            analytic.lo = 0.0;
            analytic.hi = cm;
            const std::size_t points = kind == ChannelKind::PhaseDamping ? 49 : 129;
            analytic.grid = linspace(0.0, cm, points);
            for (double c : analytic.grid)
              analytic.values.push_back(p_c(kind, c, q));
            const double atom = 1.0 - trapezoid(analytic.grid, analytic.values);
            if (atom > 1e-9) analytic.point_masses.emplace_back(0.0, atom);
            add_mass_comments(inset, "analytic", analytic);
            add_mass_comments(inset, "empirical", hist);
            for (std::size_t i = 0; i < analytic.grid.size(); ++i)
              inset.rows.push_back({analytic.grid[i], analytic.values[i],
                                    interp_curve(hist, analytic.grid[i])});
            CurveMeta inset_meta{channel_name(kind), q, n, opts->seed};
            write_file(stem + "_inset_q" + format_double(q) + ".csv",
                       table_to_csv(inset, inset_meta));
          }

          svgplot::Plot plot(std::string("concurrence decay, ") + channel_name(kind),
                             "q", "C");
          std::vector<double> x, mean, lo_band, hi_band, cmax;
          for (const auto& row : table.rows) {
            x.push_back(row[0]);
            mean.push_back(row[1]);
            lo_band.push_back(std::max(0.0, row[1] - row[2]));
            hi_band.push_back(row[1] + row[2]);
            cmax.push_back(row[3]);
          }
          plot.add_line(x, mean, "mean");
          plot.add_line(x, lo_band, "mean-std", true);
          plot.add_line(x, hi_band, "mean+std", true);
          plot.add_line(x, cmax, "maximum");
          if (!peak_q.empty()) plot.add_line(peak_q, peak_c, "densest C", true);
          plot.write(stem + ".svg");
          std::printf("wrote %s.svg\n", stem.c_str());
          return 0;
        }

        // Figure 5: time-profile morphologies.
        const auto grid = linspace(0.0, 12.0, 481);
        const QProfile pseudo = QProfile::pseudomode(1.0, 4.0);
        const QProfile ohmic_warm = QProfile::ohmic(1.0, 1.0);
        const QProfile osc = QProfile::oscillator(1.0, 1.0, 1.0);
        const QProfile ohmic_cold = QProfile::ohmic(1.0, 0.0);

        Table table;
        table.columns = {"t", "pseudomode", "ohmic_warm", "oscillator", "ohmic_cold"};
        for (double t : grid)
          table.rows.push_back({t, pseudo.q_at(t), ohmic_warm.q_at(t), osc.q_at(t),
                                ohmic_cold.q_at(t)});
        table.comments.push_back("q_inf,ohmic_cold," +
                                 format_double(ohmic_cold.q_inf()));
        CurveMeta meta{"profiles", std::numeric_limits<double>::quiet_NaN(), 0, 0};
        write_file(stem + ".csv", table_to_csv(table, meta));

        svgplot::Plot plot("time-profile morphologies", "t", "q");
        std::vector<double> c0(table.rows.size()), c1(c0), c2(c0), c3(c0), x(c0);
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
          x[i] = table.rows[i][0];
          c0[i] = table.rows[i][1];
          c1[i] = table.rows[i][2];
          c2[i] = table.rows[i][3];
          c3[i] = table.rows[i][4];
        }
        plot.add_line(x, c0, "pseudomode", true);
        plot.add_line(x, c1, "ohmic, warm");
        plot.add_line(x, c2, "oscillator");
        plot.add_line(x, c3, "ohmic, cold", true);
        plot.write(stem + ".svg");
        std::printf("wrote %s.svg\n", stem.c_str());
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    return job();
  } catch (const accuracy_error& e) {
    std::fprintf(stderr, "accuracy: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
