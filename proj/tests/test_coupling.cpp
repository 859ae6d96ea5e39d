#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <cstring>

#include "orbtherm/checkpoint.hpp"
#include "orbtherm/config.hpp"
#include "orbtherm/coupling.hpp"
#include "orbtherm/tides.hpp"

using namespace orbtherm;
using nlohmann::json;

namespace {

ScenarioConfig scenario(const json& patch, const std::string& preset = "nominal", json extra = json::object()) {
  extra["scenario"] = patch;
  return build_config(extra, preset).scenario;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_samples(const SimulationRecord& x, const SimulationRecord& y) {
  if (x.samples.size() != y.samples.size()) return false;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    const auto& a = x.samples[i];
    const auto& b = y.samples[i];
    for (auto [p, q] : {std::pair{a.t_yr, b.t_yr}, {a.a5, b.a5}, {a.e5, b.e5}, {a.theta_deg, b.theta_deg},
                        {a.tmean5, b.tmean5}, {a.k2q5, b.k2q5}, {a.power5, b.power5}, {a.a2, b.a2},
                        {a.tmean2, b.tmean2}, {a.momentum, b.momentum}})
      if (!same_bits(p, q)) return false;
    if (a.librating != b.librating) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scenario validation") {
  auto cfg = scenario({{"duration_yr", 1000.0}});
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.macro_step_yr = 0.01;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.resonance = 7;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = cfg;
  bad.duration_yr = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  CHECK(initial_profile_from_string(to_string(InitialProfile::Cold)) == InitialProfile::Cold);
}

TEST_CASE("zero-tide, source-free run keeps the thermal state constant") {
  auto cfg = scenario({{"duration_yr", 3000.0}, {"output_every", 1}, {"tides", false}, {"radiogenic", false},
                       {"initial_profile", "uniform"}});
  const auto rec = run_coupled(cfg);
  REQUIRE(rec.samples.size() == 31);
  const auto& first = rec.samples.front();
  for (const auto& s : rec.samples) {
    CHECK(std::abs(s.tmean5 - 84.0) < 1e-9);
    CHECK(std::abs(s.tcenter5 - 84.0) < 1e-9);
    CHECK(std::abs(s.tmean2 - first.tmean2) < 1e-9);
    // Only the forcing frequency moves, with the conservative oscillation of a5.
    CHECK(std::abs(s.k2q5 / first.k2q5 - 1.0) < 1e-3);
    CHECK(s.power5 == 0.0);
    CHECK(s.power2 == 0.0);
    CHECK(std::abs(s.momentum / first.momentum - 1.0) < 1e-9);
  }
  CHECK(first.tmean5 == rel_approx(84.0).epsilon(1e-14));
  for (std::size_t i = 1; i < rec.samples.size(); ++i) CHECK(rec.samples[i].t_yr > rec.samples[i - 1].t_yr);
}

TEST_CASE("placement at the stationary point of the selected argument") {
  for (int which : {1, 4, 6}) {
    auto cfg = scenario({{"duration_yr", 0.0}, {"placement_offset_km", 0.0}, {"resonance", which}});
    CoupledSimulation sim(cfg);
    auto params = sim.model().params();
    // Start-up steps moved the state by 9 dynamics steps; measure at the placement itself.
    AveragedVector y0 = initial_vector(cfg.inner.elements, cfg.outer.elements);
    y0[0] = resonance_stationary_a5(y0, which, params);
    const double gm = gm_per_year(cfg.planet.gm);
    CHECK(std::abs(secular_argument_rate(y0, which, params)) < 1e-9 * std::sqrt(gm / std::pow(y0[0], 3)));
    CHECK(std::abs(y0[0] - cfg.outer.elements.a * std::cbrt(1.0 / 9.0)) < 100.0);
  }
}

TEST_CASE("capture with the default offset, passage with the inverted one") {
  auto base = json{{"duration_yr", 40000.0}, {"output_every", 1}};
  const auto captured = run_coupled(scenario(base));
  REQUIRE(captured.summary.capture_time_yr.has_value());
  CHECK(*captured.summary.capture_time_yr < 0.05 * 6e6);
  CHECK(captured.samples.back().librating);
  for (const auto& s : captured.samples) {
    CHECK(s.k2q5 >= 0.0);
    CHECK(s.k2q2 >= 0.0);
  }

  base["placement_offset_km"] = -2.0;
  const auto passed = run_coupled(scenario(base));
  CHECK_FALSE(passed.summary.capture_time_yr.has_value());
  for (const auto& s : passed.samples) CHECK_FALSE(s.librating);
}

TEST_CASE("Maxwell dissipation of cold Miranda is below radiogenic heating") {
  const auto cfg = scenario({{"duration_yr", 2000.0}, {"output_every", 1}});
  const auto rec = run_coupled(cfg);
  const auto inv = calibrated_inventory(cfg.calibration);
  const double silicate = cfg.inner.body.mass() * cfg.inner.mixture.x_s;
  const double radiogenic = silicate * radiogenic_power(cfg.start_epoch_yr, inv);
  for (const auto& s : rec.samples) {
    CHECK(s.power5 < radiogenic);
    CHECK(s.q5 > 1e15);
  }
}

TEST_CASE("halving the macro-step leaves the nominal outcome unchanged") {
  auto base = json{{"duration_yr", 30000.0}, {"dynamic_step_yr", 0.05}};
  base["macro_step_yr"] = 100.0;
  const auto a = run_coupled(scenario(base)).summary;
  base["macro_step_yr"] = 50.0;
  const auto b = run_coupled(scenario(base)).summary;
  CHECK(std::abs(b.e5_final / a.e5_final - 1.0) < 0.01);
  CHECK(std::abs(b.tmean5_final / a.tmean5_final - 1.0) < 0.01);
}

TEST_CASE("satellite damping dominates at large eccentricity") {
  const json strong = {{"inner", {{"k2_over_q_override", 5.2e-5}}}};
  const auto cfg = scenario({{"duration_yr", 100.0}, {"output_every", 1}}, "extremal-burgers", strong);
  CoupledSimulation sim(cfg);
  const auto& y = sim.state();
  const auto& params = sim.model().params();
  CHECK(params.k2q_inner == 5.2e-5);
  CHECK(params.k2q_planet == 5.2e-5);
  const double e5 = std::hypot(y[1], y[2]);
  CHECK(e5 > 0.45);
  const auto r = kaula_rates({y[0], e5, 0.0, 0.0, 0.0, 0.0}, cfg.planet, cfg.inner.body, params.k2q_planet,
                             params.k2q_inner);
  CHECK(r.de_dt < 0.0);
  // Tidal part of the averaged equations, projected on the eccentricity vector.
  auto conservative = params;
  conservative.k2q_planet = conservative.k2q_inner = conservative.k2q_outer = 0.0;
  const LaplaceTable table(y[0] / y[5]);
  const auto with = equations_of_motion(y, table, params);
  const auto without = equations_of_motion(y, table, conservative);
  const double de = ((with[1] - without[1]) * y[1] + (with[2] - without[2]) * y[2]) / e5;
  // SI tide formula against the km/yr equations of motion.
  CHECK(de == rel_approx(r.de_dt).epsilon(1e-8));
}

TEST_CASE("checkpoint and resume reproduce a straight run bit for bit") {
  auto cfg = scenario({{"duration_yr", 3000.0}, {"output_every", 2}});
  cfg.digest = "test-digest";
  CoupledSimulation straight(cfg);
  straight.advance();

  CoupledSimulation first(cfg);
  CHECK_FALSE(first.advance(13));
  const std::string bytes = serialize_checkpoint(first.checkpoint());
  CoupledSimulation resumed(cfg, deserialize_checkpoint(bytes));
  CHECK(resumed.advance());

  for (std::size_t i = 0; i < averaged_dim; ++i) CHECK(same_bits(resumed.state()[i], straight.state()[i]));
  CHECK(same_samples(resumed.record(), straight.record()));
  CHECK(resumed.inner_thermal().grid.temps == straight.inner_thermal().grid.temps);
  CHECK(same_bits(resumed.inner_thermal().k2q, straight.inner_thermal().k2q));
  CHECK(resumed.time_yr() == straight.time_yr());

  auto other = cfg;
  other.digest = "another";
  CHECK_THROWS_AS(CoupledSimulation(other, deserialize_checkpoint(bytes)), std::invalid_argument);
}

TEST_CASE("corrupt checkpoints are refused") {
  auto cfg = scenario({{"duration_yr", 500.0}});
  CoupledSimulation sim(cfg);
  sim.advance(2);
  const std::string bytes = serialize_checkpoint(sim.checkpoint());
  CHECK_NOTHROW(deserialize_checkpoint(bytes));

  auto refused = [](const std::string& b, const char* fragment) {
    try {
      deserialize_checkpoint(b);
    } catch (const CheckpointError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  CHECK(refused(bytes.substr(0, 10), "truncated"));
  CHECK(refused(bytes.substr(0, bytes.size() - 40), "truncated"));
  std::string magic = bytes;
  magic[0] = 'X';
  CHECK(refused(magic, "magic"));
  std::string version = bytes;
  version[8] = static_cast<char>(checkpoint_format_version + 1);
  CHECK(refused(version, "version"));
  std::string flipped = bytes;
  flipped[40] ^= 0x01;
  CHECK(refused(flipped, "checksum"));
  CHECK(refused(bytes + "x", "trailing"));

  const auto path = std::filesystem::temp_directory_path() / "orbtherm_test.ckpt";
  save_checkpoint(path, sim.checkpoint());
  const auto back = load_checkpoint(path);
  CHECK(back.macro_index == 2);
  std::filesystem::remove(path);
  CHECK_THROWS(load_checkpoint(path));
}

TEST_CASE("zero-duration run has no samples") {
  const auto rec = run_coupled(scenario({{"duration_yr", 0.0}}));
  CHECK(rec.samples.empty());
  CHECK(rec.summary.e5_final == rel_approx(5e-4).epsilon(1e-12));
}
