#pragma once

#include <string>

#include "json.hpp"
#include "tfps/config.hpp"
#include "tfps/groundstate.hpp"

namespace tfps {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

// Full solve report as versioned JSON: problem echo, provenance (config hash,
// tolerances, seeds, resolutions), candidates with stability/exclusion data,
// the ground-state selection, and the oracle comparison. All values are in
// reduced units; per-candidate raw-unit mu/N blocks are included when the
// couplings are not unit.
nlohmann::json report_to_json(const SolveReport& report, const RunConfig& cfg);

nlohmann::json sweep_to_json(const SweepResult& sweep, const RunConfig& cfg);
nlohmann::json hessian_to_json(const HessianReport& rep);

// 17-significant-digit decimal formatting used by all CSV outputs.
std::string format_number(double v);

// Density dump: header x,rho1,rho2,V1,V2 in raw units, a fixed sample count
// per support interval.
void write_density_csv(const std::string& path, const DensityProfile& profile,
                       const RawParams& raw, int samples_per_interval);

// Figure-style columnar data: x, V, rho1, rho2 (V is species 1's potential),
// uniformly sampling the window.
void write_plot_data(const std::string& path, const DensityProfile& profile, Interval window,
                     int samples);

void write_sweep_csv(const std::string& path, const SweepResult& sweep);

void write_oracle_csv(const std::string& path, const oracle::Grid& grid,
                      const oracle::GridDensities& densities);

}  // namespace tfps
