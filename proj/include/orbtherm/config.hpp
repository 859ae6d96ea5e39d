#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbtherm/cartography.hpp"
#include "orbtherm/coupling.hpp"

namespace orbtherm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimateSpec {
  double e_lo = 0.0;
  double e_hi = 0.1;
  int n_e = 51;
  double q_lo = 1.0;
  double q_hi = 1000.0;
  int n_q = 31;
  bool q_log = true;
  std::optional<double> k2;  // defaults to the elastic k2 of the inner satellite
};

struct CurveSpec {
  double tm_lo = 150.0;  // K
  double tm_hi = 273.0;
  int count = 124;
  std::optional<double> temperature;  // defaults to the mean of the inner satellite's warm profile
  double burgers_eta_ratio = 17.0;
  std::optional<double> andrade_beta;
};

struct RunConfig {
  nlohmann::json merged;  // defaults, preset and user file combined
  std::string digest;     // SHA-256 of the canonical merged document
  ScenarioConfig scenario;
  MapSpec map;
  MapBase map_base;  // bodies with the configured (epoch) elements
  ColorScale color_scale = ColorScale::Linear;
  EstimateSpec estimate;
  CurveSpec curves;
  std::string checkpoint_path;      // empty: no checkpoints
  long long checkpoint_every = 0;   // macro-steps between checkpoints
};

// Built-in document; an empty user file runs the nominal scenario.
const nlohmann::json& default_config();
std::vector<std::string> preset_names();
const nlohmann::json& preset_patch(const std::string& name);

// Overlays patch onto base; keys absent from base are rejected with their dotted path.
void merge_config(nlohmann::json& base, const nlohmann::json& patch, const std::string& path = "");

nlohmann::json parse_config_text(const std::string& text, const std::string& source = "config");

RunConfig build_config(const nlohmann::json& user, const std::string& preset = "nominal");
RunConfig load_config(const std::optional<std::filesystem::path>& path, const std::string& preset = "nominal");

}  // namespace orbtherm
