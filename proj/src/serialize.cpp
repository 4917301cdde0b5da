#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "qdecay/serialize.hpp"

namespace qdecay {

namespace {

using nlohmann::json;

void append_meta_lines(std::string& out, const CurveMeta& meta) {
  out += "# seed," + std::to_string(meta.seed) + "\n";
  out += "# n," + std::to_string(meta.n) + "\n";
  out += "# kind," + meta.kind + "\n";
  if (std::isfinite(meta.q)) out += "# q," + format_double(meta.q) + "\n";
  out += std::string("# version,") + version_string + "\n";
}

json meta_to_json(const CurveMeta& meta) {
  json j;
  j["kind"] = meta.kind;
  if (std::isfinite(meta.q)) j["q"] = meta.q;
  j["n"] = meta.n;
  j["seed"] = meta.seed;
  j["version"] = version_string;
  return j;
}

ProfileKind profile_kind_from_name(const std::string& name) {
  for (ProfileKind k :
       {ProfileKind::MarkovConstant, ProfileKind::NonAutonomous,
        ProfileKind::PseudomodeAD, ProfileKind::OhmicDephasing,
        ProfileKind::SingleOscillatorDephasing, ProfileKind::Tabulated}) {
    if (name == profile_name(k)) return k;
  }
  throw std::invalid_argument("unknown profile kind: " + name);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string curve_to_csv(const DensityCurve& curve, const CurveMeta& meta) {
  std::string out = "x,density\n";
  append_meta_lines(out, meta);
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    out += format_double(curve.grid[i]) + "," + format_double(curve.values[i]) + "\n";
  for (const auto& [loc, w] : curve.point_masses)
    out += "# mass," + format_double(loc) + "," + format_double(w) + "\n";
  return out;
}

std::string curve_to_json(const DensityCurve& curve, const CurveMeta& meta) {
  json j;
  j["grid"] = curve.grid;
  j["values"] = curve.values;
  json masses = json::array();
  for (const auto& [loc, w] : curve.point_masses)
    masses.push_back(json::array({loc, w}));
  j["masses"] = masses;
  j["domain"] = json::array({curve.lo, curve.hi});
  j["meta"] = meta_to_json(meta);
  return j.dump() + "\n";
}

DensityCurve curve_from_json(const std::string& text, CurveMeta* meta) {
  // Malformed input is a caller error, not a library defect; fold the JSON
  // library's exception family into the ingest vocabulary.
  try {
    const json j = json::parse(text);
    DensityCurve curve;
    curve.grid = j.at("grid").get<std::vector<double>>();
    curve.values = j.at("values").get<std::vector<double>>();
    for (const auto& m : j.at("masses"))
      curve.point_masses.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
    curve.lo = j.at("domain").at(0).get<double>();
    curve.hi = j.at("domain").at(1).get<double>();
    if (meta != nullptr) {
      const json& jm = j.at("meta");
      meta->kind = jm.at("kind").get<std::string>();
      meta->q = jm.contains("q") ? jm.at("q").get<double>()
                                 : std::numeric_limits<double>::quiet_NaN();
      meta->n = jm.at("n").get<std::uint64_t>();
      meta->seed = jm.at("seed").get<std::uint64_t>();
    }
    return curve;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("curve_from_json: ") + e.what());
  }
}

std::string table_to_csv(const Table& table, const CurveMeta& meta) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ",";
    out += table.columns[c];
  }
  out += "\n";
  append_meta_lines(out, meta);
  for (const std::string& line : table.comments) out += "# " + line + "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("table_to_csv: row width differs from header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ",";
      out += format_double(row[c]);
    }
    out += "\n";
  }
  return out;
}

std::string profile_to_csv(const QProfile& profile, const std::vector<double>& t_grid) {
  std::string out = "t,q\n";
  out += std::string("# kind,") + profile_name(profile.kind) + "\n";
  out += std::string("# version,") + version_string + "\n";
  for (double t : t_grid)
    out += format_double(t) + "," + format_double(profile.q_at(t)) + "\n";
  return out;
}

std::string profile_to_json(const QProfile& profile) {
  json j;
  j["kind"] = profile_name(profile.kind);
  json params;
  params["gamma"] = profile.gamma;
  params["gamma_env"] = profile.gamma_env;
  params["gamma_rate"] = profile.gamma_rate;
  params["lambda"] = profile.lambda;
  params["gamma0"] = profile.gamma0;
  params["omega"] = profile.omega;
  params["coupling"] = profile.coupling;
  params["temperature"] = profile.temperature;
  params["conventional_kernel"] = profile.conventional_kernel;
  j["params"] = params;
  json samples = json::array();
  for (const auto& [t, q] : profile.samples)
    samples.push_back(json::array({t, q}));
  j["samples"] = samples;
  return j.dump() + "\n";
}

QProfile profile_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    QProfile p;
    p.kind = profile_kind_from_name(j.at("kind").get<std::string>());
    const json& params = j.at("params");
    p.gamma = params.at("gamma").get<double>();
    p.gamma_env = params.at("gamma_env").get<double>();
    p.gamma_rate = params.at("gamma_rate").get<double>();
    p.lambda = params.at("lambda").get<double>();
    p.gamma0 = params.at("gamma0").get<double>();
    p.omega = params.at("omega").get<double>();
    p.coupling = params.at("coupling").get<double>();
    p.temperature = params.at("temperature").get<double>();
    p.conventional_kernel = params.at("conventional_kernel").get<bool>();
    for (const auto& s : j.at("samples"))
      p.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("profile_from_json: ") + e.what());
  }
}

}  // namespace qdecay
