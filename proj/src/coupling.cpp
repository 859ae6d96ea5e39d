#include "orbtherm/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "orbtherm/tides.hpp"

namespace orbtherm {

using constants::deg;
using constants::pi;
using constants::two_pi;
using constants::year;

std::string to_string(InitialProfile p) {
  switch (p) {
    case InitialProfile::Uniform: return "uniform";
    case InitialProfile::Warm: return "warm";
    case InitialProfile::Cold: return "cold";
  }
  return "warm";
}

InitialProfile initial_profile_from_string(const std::string& s) {
  if (s == "uniform") return InitialProfile::Uniform;
  if (s == "warm") return InitialProfile::Warm;
  if (s == "cold") return InitialProfile::Cold;
  throw std::invalid_argument("unknown initial profile '" + s + "' (expected uniform, warm or cold)");
}

void ScenarioConfig::validate() const {
  planet.validate();
  inner.body.validate();
  outer.body.validate();
  inner.elements.validate();
  outer.elements.validate();
  inner.rheology.validate();
  outer.rheology.validate();
  if (!(inner.elements.a < outer.elements.a)) throw std::domain_error("inner satellite must orbit inside the outer one");
  if (!(duration_yr >= 0.0)) throw std::domain_error("duration must be non-negative");
  if (!(dynamic_step_yr > 0.0)) throw std::domain_error("dynamics step must be positive");
  if (!(macro_step_yr >= dynamic_step_yr)) throw std::domain_error("macro step must be at least one dynamics step");
  if (output_every < 1) throw std::domain_error("output interval must be at least one macro step");
  if (resonance < 1 || resonance > 6) throw std::domain_error("resonance index must be in 1..6");
  if (!(libration_window_yr > 0.0)) throw std::domain_error("libration window must be positive");
  if (inner.n_points < 3 || outer.n_points < 3) throw std::domain_error("thermal grids need at least 3 points");
  for (const auto* s : {&inner, &outer})
    if (s->k2q_override && !(*s->k2q_override >= 0.0)) throw std::domain_error("k2/Q override must be non-negative");
}

namespace {

// Multipliers of (w5, w2, Om5, Om2) in 2 theta_k.
constexpr std::array<std::array<int, 4>, 6> argument_terms{{
    {0, 0, 2, 0},
    {0, 0, 1, 1},
    {0, 0, 0, 2},
    {0, 2, 0, 0},
    {1, 1, 0, 0},
    {2, 0, 0, 0},
}};

const std::array<int, 4>& terms_of(int which) {
  if (which < 1 || which > 6) throw std::out_of_range("resonant argument index must be in 1..6");
  return argument_terms[static_cast<std::size_t>(which - 1)];
}

double phase_rate(double x, double y, double dx, double dy) {
  double r2 = x * x + y * y;
  if (r2 < 1e-24) {
    // Direction undefined: evaluate the rate of a tiny vector along the current heading.
    r2 = 1e-24;
  }
  return (x * dy - y * dx) / r2;
}

double inclination_of(double q, double p) { return 2.0 * std::asin(std::min(1.0, std::hypot(q, p))); }

}  // namespace

double doubled_resonant_argument(const AveragedVector& y, int which) {
  const auto& c = terms_of(which);
  const double w5 = std::atan2(y[2], y[1]);
  const double w2 = std::atan2(y[7], y[6]);
  const double o5 = std::atan2(y[4], y[3]);
  const double o2 = std::atan2(y[9], y[8]);
  return wrap_angle(-y[10] + c[0] * w5 + c[1] * w2 + c[2] * o5 + c[3] * o2);
}

double secular_argument_rate(const AveragedVector& y, int which, const AveragedParams& params) {
  AveragedParams p = params;
  p.resonant = false;
  p.indirect = false;
  p.k2q_planet = p.k2q_inner = p.k2q_outer = 0.0;
  AveragedVector s = y;
  // Give undefined directions a tiny magnitude so their precession rates exist.
  for (std::size_t i : {1u, 3u, 6u, 8u})
    if (std::hypot(s[i], s[i + 1]) < 1e-9) s[i] = 1e-9;
  const LaplaceTable table(s[0] / s[5]);
  const auto d = equations_of_motion(s, table, p);
  const auto& c = terms_of(which);
  const double w5 = phase_rate(s[1], s[2], d[1], d[2]);
  const double w2 = phase_rate(s[6], s[7], d[6], d[7]);
  const double o5 = phase_rate(s[3], s[4], d[3], d[4]);
  const double o2 = phase_rate(s[8], s[9], d[8], d[9]);
  return -d[10] + c[0] * w5 + c[1] * w2 + c[2] * o5 + c[3] * o2;
}

double resonance_stationary_a5(const AveragedVector& y, int which, const AveragedParams& params) {
  auto rate = [&](double a5) {
    AveragedVector s = y;
    s[0] = a5;
    return secular_argument_rate(s, which, params);
  };
  const double a_exact = y[5] * std::cbrt(1.0 / 9.0);
  double lo = a_exact - 50.0;
  double hi = a_exact + 50.0;
  double flo = rate(lo);
  double fhi = rate(hi);
  for (int i = 0; i < 40 && flo * fhi > 0.0; ++i) {
    lo -= 100.0 * (i + 1);
    hi += 100.0 * (i + 1);
    flo = rate(lo);
    fhi = rate(hi);
  }
  if (flo * fhi > 0.0) throw std::runtime_error("resonance placement: no stationary point bracketed");
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(rate, lo, hi, flo, fhi,
                                                   boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (r.first + r.second);
}

void LibrationTracker::add(double doubled_angle) {
  if (!started) {
    unwrapped = doubled_angle;
    started = true;
    step_min = step_max = unwrapped;
  } else {
    unwrapped += std::remainder(doubled_angle - previous, two_pi);
    step_min = std::min(step_min, unwrapped);
    step_max = std::max(step_max, unwrapped);
  }
  previous = doubled_angle;
}

void LibrationTracker::close_macro_step() {
  window.push_back({step_min, step_max});
  while (window.size() > window_len) window.pop_front();
  step_min = step_max = unwrapped;
}

double LibrationTracker::range() const {
  if (window.empty()) return std::numeric_limits<double>::infinity();
  double lo = window.front()[0];
  double hi = window.front()[1];
  for (const auto& w : window) {
    lo = std::min(lo, w[0]);
    hi = std::max(hi, w[1]);
  }
  return hi - lo;
}

bool LibrationTracker::librating() const { return full() && range() < two_pi; }

ThermalGrid initial_grid(const SatelliteConfig& sat, const ScenarioConfig& cfg, const RadiogenicInventory& inv) {
  const double radius_m = sat.body.mean_radius * 1e3;
  switch (cfg.initial_profile) {
    case InitialProfile::Uniform:
      return make_uniform_grid(radius_m, sat.n_points, sat.mixture, sat.t_surf, sat.t_uniform);
    case InitialProfile::Warm:
    case InitialProfile::Cold: {
      const auto set = cfg.initial_profile == InitialProfile::Warm ? IsotopeSet::All : IsotopeSet::LongLived;
      return radiogenic_profile(radius_m, sat.mixture, sat.t_surf, inv, set,
                                ProfileSettings{cfg.profile_duration_yr, sat.n_points});
    }
  }
  throw std::logic_error("unhandled initial profile");
}

CoupledSimulation::CoupledSimulation(ScenarioConfig cfg)
    : cfg_(std::move(cfg)),
      model_(averaged_params(cfg_.planet, cfg_.inner.body, cfg_.outer.body)),
      abm_(cfg_.dynamic_step_yr) {
  setup_common();
  AveragedVector y = initial_vector(cfg_.inner.elements, cfg_.outer.elements);
  if (cfg_.auto_place) y[0] = resonance_stationary_a5(y, cfg_.resonance, model_.params()) - cfg_.placement_offset_km;
  if (!(y[0] > 0.0 && y[0] < y[5])) throw std::domain_error("placement puts the inner satellite outside the outer one");

  th5_.grid = initial_grid(cfg_.inner, cfg_, inventory_);
  th2_.grid = initial_grid(cfg_.outer, cfg_, inventory_);
  update_tidal_response(th5_, cfg_.inner, y[0]);
  update_tidal_response(th2_, cfg_.outer, y[5]);
  model_.params().k2q_inner = cfg_.tides ? th5_.k2q : 0.0;
  model_.params().k2q_outer = cfg_.tides ? th2_.k2q : 0.0;

  auto& sm = record_.summary;
  sm.e5_final = sm.e5_max = std::hypot(y[1], y[2]);
  sm.tmean5_initial = sm.tmean5_final = sm.tmean5_max = mean_temperature(th5_.grid);
  sm.q5_min = th5_.q;
  abm_.initialize(model_, y, 0.0);
  if (total_macro_ > 0) push_sample(abm_.time());
  snapshot_state(last_good_);
}

CoupledSimulation::CoupledSimulation(ScenarioConfig cfg, const CheckpointData& resume)
    : cfg_(std::move(cfg)),
      model_(averaged_params(cfg_.planet, cfg_.inner.body, cfg_.outer.body)),
      abm_(cfg_.dynamic_step_yr) {
  if (resume.digest != cfg_.digest) throw std::invalid_argument("checkpoint was written for a different configuration");
  setup_common();
  if (resume.dynamics.dt != cfg_.dynamic_step_yr) throw std::invalid_argument("checkpoint step size differs from configuration");
  abm_.restore(resume.dynamics);
  model_.set_table_alpha(resume.table_alpha);
  auto restore_grid = [](const SatelliteConfig& sat, const std::vector<double>& temps) {
    if (temps.size() != static_cast<std::size_t>(sat.n_points))
      throw std::invalid_argument("checkpoint thermal grid size differs from configuration");
    ThermalGrid g = make_uniform_grid(sat.body.mean_radius * 1e3, sat.n_points, sat.mixture, sat.t_surf, sat.t_surf);
    g.temps = temps;
    return g;
  };
  th5_.grid = restore_grid(cfg_.inner, resume.temps5);
  th2_.grid = restore_grid(cfg_.outer, resume.temps2);
  th5_.k2q = resume.k2q5;
  th5_.q = resume.q5;
  th5_.power = resume.power5;
  th2_.k2q = resume.k2q2;
  th2_.q = resume.q2;
  th2_.power = resume.power2;
  model_.params().k2q_inner = cfg_.tides ? th5_.k2q : 0.0;
  model_.params().k2q_outer = cfg_.tides ? th2_.k2q : 0.0;
  tracker_ = resume.tracker;
  tracker_.window_len = static_cast<std::size_t>(
      std::max(1LL, std::llround(cfg_.libration_window_yr / (steps_per_macro_ * cfg_.dynamic_step_yr))));
  was_librating_ = resume.was_librating;
  record_ = resume.record;
  macro_index_ = resume.macro_index;
  if (macro_index_ > total_macro_) throw std::invalid_argument("checkpoint lies beyond the configured duration");
  snapshot_state(last_good_);
}

void CoupledSimulation::setup_common() {
  cfg_.validate();
  model_.params().k2q_planet = cfg_.tides ? cfg_.planet.k2_over_q : 0.0;
  inventory_ = calibrated_inventory(cfg_.calibration);
  steps_per_macro_ = std::max(1LL, std::llround(cfg_.macro_step_yr / cfg_.dynamic_step_yr));
  const double macro_yr = steps_per_macro_ * cfg_.dynamic_step_yr;
  total_macro_ = std::llround(cfg_.duration_yr / macro_yr);
  tracker_.window_len = static_cast<std::size_t>(std::max(1LL, std::llround(cfg_.libration_window_yr / macro_yr)));
}

double CoupledSimulation::time_yr() const { return abm_.time(); }

void CoupledSimulation::update_tidal_response(SatelliteThermalState& th, const SatelliteConfig& sat, double a_km) const {
  const double omega = mean_motion(a_km, cfg_.planet);
  const auto resp = tidal_response(mean_temperature(th.grid), omega, sat.body, sat.rheology);
  th.q = resp.q_factor;
  th.k2q = sat.k2q_override ? *sat.k2q_override : resp.k2_over_q;
}

void CoupledSimulation::push_sample(double t_yr) {
  const auto& y = abm_.state();
  SimulationSample s;
  s.t_yr = t_yr;
  s.a5 = y[0];
  s.e5 = std::hypot(y[1], y[2]);
  s.inc5_deg = inclination_of(y[3], y[4]) / deg;
  s.a2 = y[5];
  s.e2 = std::hypot(y[6], y[7]);
  s.inc2_deg = inclination_of(y[8], y[9]) / deg;
  s.theta_deg = 0.5 * doubled_resonant_argument(y, cfg_.resonance) / deg;
  s.librating = tracker_.librating();
  s.tmean5 = mean_temperature(th5_.grid);
  s.tcenter5 = th5_.grid.temps.front();
  s.q5 = th5_.q;
  s.k2q5 = th5_.k2q;
  s.power5 = th5_.power;
  s.tmean2 = mean_temperature(th2_.grid);
  s.q2 = th2_.q;
  s.k2q2 = th2_.k2q;
  s.power2 = th2_.power;
  s.momentum = resonance_momentum(y, model_.params());
  record_.samples.push_back(s);
}

void CoupledSimulation::finalize_summary() {
  const auto& y = abm_.state();
  auto& sm = record_.summary;
  sm.e5_final = std::hypot(y[1], y[2]);
  sm.e5_max = std::max(sm.e5_max, sm.e5_final);
  sm.tmean5_final = mean_temperature(th5_.grid);
  sm.tmean5_max = std::max(sm.tmean5_max, sm.tmean5_final);
  sm.q5_min = std::min(sm.q5_min, th5_.q);
  sm.power5_max = std::max(sm.power5_max, th5_.power);
}

bool CoupledSimulation::advance(long long max_macro_steps) {
  const double macro_yr = steps_per_macro_ * cfg_.dynamic_step_yr;
  long long done = 0;
  while (!finished() && (max_macro_steps < 0 || done < max_macro_steps)) {
    double e5sq = 0.0, e2sq = 0.0, a5 = 0.0, a2 = 0.0, i5 = 0.0, i2 = 0.0;
    try {
      for (long long s = 0; s < steps_per_macro_; ++s) {
        abm_.step(model_);
        const auto& y = abm_.state();
        e5sq += y[1] * y[1] + y[2] * y[2];
        e2sq += y[6] * y[6] + y[7] * y[7];
        a5 += y[0];
        a2 += y[5];
        i5 += inclination_of(y[3], y[4]);
        i2 += inclination_of(y[8], y[9]);
        tracker_.add(doubled_resonant_argument(y, cfg_.resonance));
      }
    } catch (...) {
      last_good_.record = record_;
      throw;
    }
    tracker_.close_macro_step();
    const double inv_n = 1.0 / static_cast<double>(steps_per_macro_);
    const double t1 = time_yr();
    const double t0 = t1 - macro_yr;

    auto heat = [&](SatelliteThermalState& th, const SatelliteConfig& sat, double esq, double a, double inc) {
      const double n = mean_motion(a, cfg_.planet);
      th.power = 0.0;
      if (cfg_.tides && th.k2q > 0.0) {
        const double eps = equilibrium_obliquity(inc, n, node_rate(a, inc, cfg_.planet), moments_of_inertia(sat.body));
        th.power = dissipation_rate(th.k2q, cfg_.planet.gm, n, sat.body.mean_radius * 1e3, a * 1e3, std::sqrt(esq), eps);
      }
      const double r = sat.body.mean_radius * 1e3;
      const double volume = 4.0 / 3.0 * pi * r * r * r;
      double source = th.power / volume;
      if (cfg_.radiogenic)
        source += sat.mixture.rho * sat.mixture.x_s *
                  radiogenic_mean_power(cfg_.start_epoch_yr + t0, cfg_.start_epoch_yr + t1, inventory_);
      advance_uniform(th.grid, macro_yr * year, source);
      update_tidal_response(th, sat, a);
    };
    heat(th5_, cfg_.inner, e5sq * inv_n, a5 * inv_n, i5 * inv_n);
    heat(th2_, cfg_.outer, e2sq * inv_n, a2 * inv_n, i2 * inv_n);
    model_.params().k2q_inner = cfg_.tides ? th5_.k2q : 0.0;
    model_.params().k2q_outer = cfg_.tides ? th2_.k2q : 0.0;

    const bool lib = tracker_.librating();
    auto& sm = record_.summary;
    if (lib && !sm.capture_time_yr) sm.capture_time_yr = t1;
    if (!lib && was_librating_ && sm.capture_time_yr && !sm.exit_time_yr) {
      sm.exit_time_yr = t1;
      sm.e5_at_exit = std::hypot(abm_.state()[1], abm_.state()[2]);
    }
    was_librating_ = lib;

    ++macro_index_;
    ++done;
    if (macro_index_ % cfg_.output_every == 0 || finished()) push_sample(t1);
    finalize_summary();
    snapshot_state(last_good_);
  }
  return finished();
}

CheckpointData CoupledSimulation::checkpoint() const {
  CheckpointData c;
  snapshot_state(c);
  c.record = record_;
  return c;
}

void CoupledSimulation::snapshot_state(CheckpointData& c) const {
  c.digest = cfg_.digest;
  c.macro_index = macro_index_;
  c.dynamics = abm_.snapshot();
  c.table_alpha = model_.table().alpha0();
  c.temps5 = th5_.grid.temps;
  c.temps2 = th2_.grid.temps;
  c.k2q5 = th5_.k2q;
  c.q5 = th5_.q;
  c.power5 = th5_.power;
  c.k2q2 = th2_.k2q;
  c.q2 = th2_.q;
  c.power2 = th2_.power;
  c.tracker = tracker_;
  c.was_librating = was_librating_;
}

SimulationRecord run_coupled(const ScenarioConfig& cfg) {
  CoupledSimulation sim(cfg);
  sim.advance();
  return sim.record();
}

}  // namespace orbtherm
