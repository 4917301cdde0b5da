#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qdecay/ensembles.hpp"
#include "qdecay/timemaps.hpp"
#include "qdecay/version.hpp"

namespace qdecay {

// Provenance block written into every artifact. `q` is emitted only when
// finite (density-over-concurrence files carry it, others do not).
struct CurveMeta {
  std::string kind;
  double q = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

// Shortest representation that parses back to the same double. All writers
// below use it, so identical data yields byte-identical files.
std::string format_double(double v);

// CSV layout: "x,density" header, "# key,value" metadata lines, data rows,
// then one "# mass,<location>,<weight>" line per point mass.
std::string curve_to_csv(const DensityCurve& curve, const CurveMeta& meta);

// JSON record {grid, values, masses, domain, meta{kind, q, n, seed, version}}.
std::string curve_to_json(const DensityCurve& curve, const CurveMeta& meta);
DensityCurve curve_from_json(const std::string& text, CurveMeta* meta = nullptr);

// Multi-column numeric table for side-by-side CLI output. `comments` go
// out verbatim as "# ..." lines after the metadata (used for per-column
// mass annotations such as "mass,analytic,1,0.64").
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns in length
  std::vector<std::string> comments;
};
std::string table_to_csv(const Table& table, const CurveMeta& meta);

// Profile tabulation "t,q" plus kind metadata; JSON keeps the full
// parameter set {kind, params, samples} and round-trips through
// profile_from_json.
std::string profile_to_csv(const QProfile& profile, const std::vector<double>& t_grid);
std::string profile_to_json(const QProfile& profile);
QProfile profile_from_json(const std::string& text);

}  // namespace qdecay
