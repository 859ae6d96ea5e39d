#pragma once

#include <array>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "orbtherm/abm10.hpp"
#include "orbtherm/averaged_dynamics.hpp"
#include "orbtherm/core_model.hpp"
#include "orbtherm/rheology.hpp"
#include "orbtherm/thermal.hpp"

namespace orbtherm {

enum class InitialProfile { Uniform, Warm, Cold };

std::string to_string(InitialProfile p);
InitialProfile initial_profile_from_string(const std::string& s);

struct SatelliteConfig {
  std::string name;
  BodyPhysical body;
  OrbitalElements elements;
  MixtureProps mixture;
  double t_surf = 84.0;     // K
  double t_uniform = 84.0;  // K, start temperature of a uniform profile
  int n_points = 200;
  RheologyParams rheology;
  std::optional<double> k2q_override;
};

struct ScenarioConfig {
  PlanetModel planet;
  SatelliteConfig inner;
  SatelliteConfig outer;

  double duration_yr = 6.0e6;
  double dynamic_step_yr = 17.0 / 300.0;
  double macro_step_yr = 100.0;  // rounded to a whole number of dynamics steps
  int output_every = 10;         // macro-steps per record row

  int resonance = 6;  // index of the tracked argument, 1..6
  bool auto_place = true;
  double placement_offset_km = 2.0;

  InitialProfile initial_profile = InitialProfile::Warm;
  double start_epoch_yr = 4.56e9;  // time since formation when the run starts
  double profile_duration_yr = 4.6e9;
  bool radiogenic = true;
  bool tides = true;
  RadiogenicCalibration calibration;
  double libration_window_yr = 5000.0;

  std::string digest;  // identifies the configuration in outputs and checkpoints

  void validate() const;
};

// Doubled resonant argument 2 theta_k (k = 1..6), wrapped to [0, 2 pi).
double doubled_resonant_argument(const AveragedVector& y, int which);

// Rate of 2 theta_k (rad/yr) from the secular and oblateness parts only.
double secular_argument_rate(const AveragedVector& y, int which, const AveragedParams& params);

// a5 where the selected argument is stationary, for the given state otherwise unchanged.
double resonance_stationary_a5(const AveragedVector& y, int which, const AveragedParams& params);

struct SimulationSample {
  double t_yr = 0.0;
  double a5 = 0.0, e5 = 0.0, inc5_deg = 0.0;
  double a2 = 0.0, e2 = 0.0, inc2_deg = 0.0;
  double theta_deg = 0.0;  // selected resonant argument, half the wrapped doubled angle: [0, 180)
  bool librating = false;
  double tmean5 = 0.0, tcenter5 = 0.0, q5 = 0.0, k2q5 = 0.0, power5 = 0.0;
  double tmean2 = 0.0, q2 = 0.0, k2q2 = 0.0, power2 = 0.0;
  double momentum = 0.0;
};

struct SimulationSummary {
  std::optional<double> capture_time_yr;
  std::optional<double> exit_time_yr;
  double e5_at_exit = 0.0;
  double e5_final = 0.0;
  double e5_max = 0.0;
  double tmean5_initial = 0.0;
  double tmean5_final = 0.0;
  double tmean5_max = 0.0;
  double q5_min = 0.0;
  double power5_max = 0.0;
};

struct SimulationRecord {
  std::vector<SimulationSample> samples;
  SimulationSummary summary;
};

// Tracks the unwrapped argument over a trailing window of macro-steps.
struct LibrationTracker {
  double unwrapped = 0.0;
  double previous = 0.0;
  bool started = false;
  double step_min = 0.0;
  double step_max = 0.0;
  std::deque<std::array<double, 2>> window;
  std::size_t window_len = 1;

  void add(double doubled_angle);
  void close_macro_step();
  bool full() const { return window.size() >= window_len; }
  double range() const;
  bool librating() const;
};

struct SatelliteThermalState {
  ThermalGrid grid;
  double k2q = 0.0;
  double q = 0.0;
  double power = 0.0;
};

// Everything needed to resume a run bit for bit.
struct CheckpointData {
  std::string digest;
  long long macro_index = 0;
  Abm10<averaged_dim>::Snapshot dynamics;
  double table_alpha = 0.0;
  std::vector<double> temps5;
  std::vector<double> temps2;
  double k2q5 = 0.0, q5 = 0.0, power5 = 0.0;
  double k2q2 = 0.0, q2 = 0.0, power2 = 0.0;
  LibrationTracker tracker;
  bool was_librating = false;
  SimulationRecord record;
};

class CoupledSimulation {
 public:
  explicit CoupledSimulation(ScenarioConfig cfg);
  CoupledSimulation(ScenarioConfig cfg, const CheckpointData& resume);

  // Advances up to max_macro_steps (all remaining when negative). Returns true when the run is complete.
  bool advance(long long max_macro_steps = -1);
  bool finished() const { return macro_index_ >= total_macro_; }

  CheckpointData checkpoint() const;
  // State at the last completed macro-step; its record is filled in only after a failure.
  const CheckpointData& last_good() const { return last_good_; }

  const SimulationRecord& record() const { return record_; }
  const ScenarioConfig& config() const { return cfg_; }
  const AveragedVector& state() const { return abm_.state(); }
  double time_yr() const;
  long long macro_index() const { return macro_index_; }
  long long total_macro_steps() const { return total_macro_; }
  long long steps_per_macro() const { return steps_per_macro_; }
  const SatelliteThermalState& inner_thermal() const { return th5_; }
  const SatelliteThermalState& outer_thermal() const { return th2_; }
  const AveragedModel& model() const { return model_; }
  const RadiogenicInventory& inventory() const { return inventory_; }

 private:
  void setup_common();
  void update_tidal_response(SatelliteThermalState& th, const SatelliteConfig& sat, double a_km) const;
  void push_sample(double t_yr);
  void snapshot_state(CheckpointData& c) const;
  void finalize_summary();

  ScenarioConfig cfg_;
  AveragedModel model_;
  Abm10<averaged_dim> abm_;
  RadiogenicInventory inventory_;
  SatelliteThermalState th5_;
  SatelliteThermalState th2_;
  LibrationTracker tracker_;
  bool was_librating_ = false;
  SimulationRecord record_;
  long long macro_index_ = 0;
  long long total_macro_ = 0;
  long long steps_per_macro_ = 0;
  CheckpointData last_good_;
};

SimulationRecord run_coupled(const ScenarioConfig& cfg);

// Initial temperature grid of one satellite.
ThermalGrid initial_grid(const SatelliteConfig& sat, const ScenarioConfig& cfg, const RadiogenicInventory& inv);

}  // namespace orbtherm
