#pragma once

#include <optional>
#include <string>

#include "tfps/groundstate.hpp"
#include "tfps/scaling.hpp"
#include "tfps/solver_options.hpp"

namespace tfps {

struct OutputConfig {
  std::string report = "report.json";
  std::string density_csv = "density.csv";
  int samples = 200;  // per support interval in density dumps
};

struct SweepConfig {
  std::string parameter = "alpha";
  std::vector<double> values;
};

struct WallsInput {
  std::vector<double> r;
  Species leading = Species::One;
};

struct RunConfig {
  RawParams raw;
  std::optional<Interval> window;
  SolverOptions solver;
  OutputConfig output;
  std::optional<SweepConfig> sweep;
  std::optional<WallsInput> walls;
  std::string config_hash;  // fnv1a-64 of the canonical serialized config
};

// Parses and validates the JSON configuration. Unknown keys, missing required
// fields, double ensemble payloads and nonpositive couplings are rejected
// with location-bearing messages. Relative tabulated-CSV paths resolve
// against the config file's directory.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

// Reduced problem assembled from a parsed config.
Problem problem_from_config(const RunConfig& cfg);

}  // namespace tfps
