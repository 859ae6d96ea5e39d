#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orbtherm/config.hpp"
#include "orbtherm/rheology.hpp"

namespace orbtherm {

using FileList = std::vector<std::filesystem::path>;

struct EstimateRow {
  double e = 0.0;
  double q = 0.0;
  double power = 0.0;     // W
  double dt_1myr = 0.0;   // K
};

std::vector<EstimateRow> estimate_grid(const RunConfig& rc);

struct RheologyCurves {
  double temperature = 0.0;  // K
  double omega = 0.0;        // rad/s
  std::vector<CurvePoint> maxwell;
  std::vector<CurvePoint> burgers;
  std::vector<CurvePoint> andrade;
};

RheologyCurves rheology_curves(const RunConfig& rc);

std::string simulation_csv(const SimulationRecord& rec, const std::string& digest);
std::string summary_csv(const SimulationRecord& rec, const std::string& digest);

// Each command writes into out_dir (created if needed) and returns the emitted files.
FileList cmd_profile(const RunConfig& rc, const std::filesystem::path& out_dir);
FileList cmd_simulate(const RunConfig& rc, const std::filesystem::path& out_dir,
                      const std::optional<std::filesystem::path>& resume = std::nullopt);
FileList cmd_map(const RunConfig& rc, const std::filesystem::path& out_dir, int workers);
FileList cmd_estimate(const RunConfig& rc, const std::filesystem::path& out_dir);
FileList cmd_rheology(const RunConfig& rc, const std::filesystem::path& out_dir);

}  // namespace orbtherm
