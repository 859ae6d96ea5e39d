#include "orbtherm/commands.hpp"

#include <cmath>
#include <stdexcept>

#include "orbtherm/checkpoint.hpp"
#include "orbtherm/output.hpp"
#include "orbtherm/tides.hpp"

namespace orbtherm {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
}

std::vector<std::string> comments(const RunConfig& rc, std::vector<std::string> extra) {
  auto c = stamp_lines(rc.digest);
  c.insert(c.end(), extra.begin(), extra.end());
  return c;
}

std::string profile_csv(const ThermalGrid& g, const std::vector<std::string>& header) {
  std::vector<std::vector<double>> rows;
  rows.reserve(g.temps.size());
  for (std::size_t i = 0; i < g.temps.size(); ++i) rows.push_back({g.radii[i] * 1e-3, g.temps[i]});
  return csv_table(header, {"r_km", "temperature_K"}, rows);
}

std::string curve_csv(const std::vector<CurvePoint>& pts, const std::vector<std::string>& header) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts) rows.push_back({p.x, p.y});
  return csv_table(header, {"t_melt_K", "Q"}, rows);
}

double warm_mean_temperature(const RunConfig& rc, const SatelliteConfig& sat) {
  const auto inv = calibrated_inventory(rc.scenario.calibration);
  const auto g = radiogenic_profile(sat.body.mean_radius * 1e3, sat.mixture, sat.t_surf, inv, IsotopeSet::All,
                                    ProfileSettings{rc.scenario.profile_duration_yr, sat.n_points});
  return mean_temperature(g);
}

}  // namespace

std::vector<EstimateRow> estimate_grid(const RunConfig& rc) {
  const auto& es = rc.estimate;
  const auto& sat = rc.scenario.inner;
  const double a = rc.map_base.inner_elements.a;
  const double k2 = es.k2 ? *es.k2
                          : love_number_k2(sat.rheology.mu_elastic, sat.body.density, sat.body.surface_gravity(),
                                           sat.body.mean_radius * 1e3)
                                .real();
  std::vector<EstimateRow> rows;
  for (int iq = 0; iq < es.n_q; ++iq) {
    const double u = static_cast<double>(iq) / (es.n_q - 1);
    const double q = es.q_log ? es.q_lo * std::pow(es.q_hi / es.q_lo, u) : es.q_lo + (es.q_hi - es.q_lo) * u;
    for (int ie = 0; ie < es.n_e; ++ie) {
      const double e = es.e_lo + (es.e_hi - es.e_lo) * ie / (es.n_e - 1);
      const auto h = heating_estimate(e, q, k2, sat.body, a, rc.scenario.planet, sat.mixture.cp);
      rows.push_back({e, q, h.power, h.dt_per_myr});
    }
  }
  return rows;
}

RheologyCurves rheology_curves(const RunConfig& rc) {
  const auto& sat = rc.scenario.inner;
  const auto& cv = rc.curves;
  RheologyCurves out;
  out.omega = mean_motion(rc.map_base.inner_elements.a, rc.scenario.planet);
  out.temperature = cv.temperature ? *cv.temperature : warm_mean_temperature(rc, sat);
  RheologyParams p = sat.rheology;
  p.model = RheologyModel::Maxwell;
  out.maxwell = q_curve_vs_melting(out.temperature, out.omega, sat.body, p, cv.tm_lo, cv.tm_hi, cv.count);
  p.model = RheologyModel::Burgers;
  p.burgers_eta_ratio = cv.burgers_eta_ratio;
  out.burgers = q_curve_vs_melting(out.temperature, out.omega, sat.body, p, cv.tm_lo, cv.tm_hi, cv.count);
  p.model = RheologyModel::Andrade;
  p.andrade_beta = cv.andrade_beta;
  out.andrade = q_curve_vs_melting(out.temperature, out.omega, sat.body, p, cv.tm_lo, cv.tm_hi, cv.count);
  return out;
}

std::string simulation_csv(const SimulationRecord& rec, const std::string& digest) {
  std::vector<std::vector<double>> rows;
  rows.reserve(rec.samples.size());
  for (const auto& s : rec.samples)
    rows.push_back({s.t_yr, s.a5, s.e5, s.inc5_deg, s.theta_deg, s.librating ? 1.0 : 0.0, s.tmean5, s.tcenter5, s.q5,
                    s.k2q5, s.power5, s.a2, s.e2, s.inc2_deg, s.tmean2, s.q2, s.k2q2, s.power2, s.momentum});
  return csv_table(stamp_lines(digest),
                   {"t_yr", "a5_km", "e5", "inc5_deg", "theta_deg", "librating", "tmean5_K", "tcenter5_K", "q5", "k2q5",
                    "dedt5_W", "a2_km", "e2", "inc2_deg", "tmean2_K", "q2", "k2q2", "dedt2_W", "momentum"},
                   rows);
}

std::string summary_csv(const SimulationRecord& rec, const std::string& digest) {
  const auto& s = rec.summary;
  const double nan = std::nan("");
  std::string out;
  for (const auto& c : stamp_lines(digest)) out += "# " + c + "\n";
  out += "quantity,value\n";
  auto row = [&](const char* k, double v) { out += std::string(k) + "," + format_number(v) + "\n"; };
  row("capture_time_yr", s.capture_time_yr.value_or(nan));
  row("exit_time_yr", s.exit_time_yr.value_or(nan));
  row("e5_at_exit", s.exit_time_yr ? s.e5_at_exit : nan);
  row("e5_final", s.e5_final);
  row("e5_max", s.e5_max);
  row("tmean5_initial_K", s.tmean5_initial);
  row("tmean5_final_K", s.tmean5_final);
  row("delta_tmean5_K", s.tmean5_final - s.tmean5_initial);
  row("tmean5_max_K", s.tmean5_max);
  row("q5_min", s.q5_min);
  row("dedt5_max_W", s.power5_max);
  return out;
}

FileList cmd_profile(const RunConfig& rc, const fs::path& out_dir) {
  ensure_dir(out_dir);
  const auto inv = calibrated_inventory(rc.scenario.calibration);
  FileList files;
  for (const auto* sat : {&rc.scenario.inner, &rc.scenario.outer}) {
    const auto prof = initial_profiles(sat->body.mean_radius * 1e3, sat->mixture, sat->t_surf, inv,
                                       ProfileSettings{rc.scenario.profile_duration_yr, sat->n_points});
    for (const auto& [label, grid] : {std::pair{"warm", &prof.warm}, std::pair{"cold", &prof.cold}}) {
      const fs::path p = out_dir / ("profile_" + sat->name + "_" + label + ".csv");
      write_file(p, profile_csv(*grid, comments(rc, {"profile " + sat->name + " " + label})));
      files.push_back(p);
    }
  }
  return files;
}

FileList cmd_simulate(const RunConfig& rc, const fs::path& out_dir, const std::optional<fs::path>& resume) {
  ensure_dir(out_dir);
  std::optional<CoupledSimulation> sim;
  if (resume)
    sim.emplace(rc.scenario, load_checkpoint(*resume));
  else
    sim.emplace(rc.scenario);
  const fs::path ckpt = rc.checkpoint_path.empty() ? fs::path{} : fs::path(rc.checkpoint_path);
  try {
    if (!ckpt.empty() && rc.checkpoint_every > 0) {
      while (!sim->advance(rc.checkpoint_every)) save_checkpoint(ckpt, sim->checkpoint());
      save_checkpoint(ckpt, sim->checkpoint());
    } else {
      sim->advance();
    }
  } catch (const std::exception& e) {
    const fs::path dump = ckpt.empty() ? out_dir / "last_good.ckpt" : ckpt;
    save_checkpoint(dump, sim->last_good());
    throw std::runtime_error(std::string("simulation aborted: ") + e.what() + "; last good state saved to '" +
                             dump.string() + "'");
  }
  const fs::path series = out_dir / "simulation.csv";
  const fs::path summary = out_dir / "summary.csv";
  write_file(series, simulation_csv(sim->record(), rc.digest));
  write_file(summary, summary_csv(sim->record(), rc.digest));
  return {series, summary};
}

FileList cmd_map(const RunConfig& rc, const fs::path& out_dir, int workers) {
  ensure_dir(out_dir);
  const auto result = run_map(rc.map, rc.map_base, workers);
  const auto header = comments(rc, {"map " + to_string(rc.map.model) + " span_yr " + format_number(rc.map.span_yr)});
  const std::string stem = "map_" + to_string(rc.map.model);
  const fs::path csv = out_dir / (stem + ".csv");
  const fs::path ppm = out_dir / (stem + ".ppm");
  write_file(csv, map_to_csv(result, header));
  write_file(ppm, map_to_ppm(result, rc.color_scale, header));
  return {csv, ppm};
}

FileList cmd_estimate(const RunConfig& rc, const fs::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::vector<double>> rows;
  for (const auto& r : estimate_grid(rc))
    rows.push_back({r.e, r.q, r.power, r.dt_1myr, r.dt_1myr > 0.0 ? std::log10(r.dt_1myr) : -HUGE_VAL});
  const fs::path p = out_dir / "estimate.csv";
  write_file(p, csv_table(comments(rc, {"tidal heating estimate for " + rc.scenario.inner.name}),
                          {"e", "Q", "power_W", "dT_1Myr_K", "log10_dT_1Myr"}, rows));
  return {p};
}

FileList cmd_rheology(const RunConfig& rc, const fs::path& out_dir) {
  ensure_dir(out_dir);
  const auto curves = rheology_curves(rc);
  const std::string info = "temperature_K " + format_number(curves.temperature) + " omega_rad_s " + format_number(curves.omega);
  FileList files;
  for (const auto& [name, pts] : {std::pair{"maxwell", &curves.maxwell}, std::pair{"burgers", &curves.burgers},
                                  std::pair{"andrade", &curves.andrade}}) {
    const fs::path p = out_dir / (std::string("q_curve_") + name + ".csv");
    write_file(p, curve_csv(*pts, comments(rc, {std::string("rheology ") + name, info})));
    files.push_back(p);
  }
  return files;
}

}  // namespace orbtherm
