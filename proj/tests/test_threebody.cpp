#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <vector>

#include "orbtherm/abm10.hpp"
#include "orbtherm/averaged_dynamics.hpp"
#include "orbtherm/threebody.hpp"
#include "orbtherm/tides.hpp"
#include "support.hpp"

using namespace orbtherm;
using testing_support::Rng;

namespace {

DirectParams nominal() { return direct_params(uranus(), miranda(), umbriel()); }

// Least-squares slope of an unwrapped angle series.
struct SlopeFit {
  std::vector<double> t, x;
  double last = 0.0, unwrapped = 0.0;
  void add(double time, double angle) {
    if (x.empty())
      unwrapped = angle;
    else
      unwrapped += std::remainder(angle - last, constants::two_pi);
    last = angle;
    t.push_back(time);
    x.push_back(unwrapped);
  }
  double slope() const {
    const double n = static_cast<double>(t.size());
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      st += t[i];
      sx += x[i];
      stt += t[i] * t[i];
      stx += t[i] * x[i];
    }
    return (n * stx - st * sx) / (n * stt - st * st);
  }
};

}  // namespace

TEST_CASE("Kepler equation and element conversions") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const double e = rng.uniform(0.0, 0.95);
    const double m = rng.uniform(-10.0, 10.0);
    const double E = solve_kepler(m, e);
    CHECK(std::abs(std::remainder(E - e * std::sin(E) - m, constants::two_pi)) < 1e-13);
  }
  const double mu = nominal().gm_planet;
  for (int i = 0; i < 2000; ++i) {
    OrbitalElements el;
    el.a = rng.uniform(1e5, 6e5);
    el.e = rng.uniform(0.001, 0.5);
    el.inc = rng.uniform(0.01, 3.1);
    el.node = rng.uniform(0.0, constants::two_pi);
    el.peri = rng.uniform(0.0, constants::two_pi);
    el.mean_longitude = rng.uniform(0.0, constants::two_pi);
    const auto s = elements_to_cartesian(el, mu);
    const auto back = cartesian_to_elements(s, mu);
    CHECK(back.a == rel_approx(el.a).epsilon(1e-11));
    CHECK(back.e == rel_approx(el.e).epsilon(1e-9));
    CHECK(back.inc == rel_approx(el.inc).epsilon(1e-11));
    CHECK(std::abs(std::remainder(back.node - el.node, constants::two_pi)) < 1e-10);
    CHECK(std::abs(std::remainder(back.peri - el.peri, constants::two_pi)) < 1e-8);
    CHECK(std::abs(std::remainder(back.mean_longitude - el.mean_longitude, constants::two_pi)) < 1e-8);
    // Vis-viva and the energy integral.
    const double v2 = s.v[0] * s.v[0] + s.v[1] * s.v[1] + s.v[2] * s.v[2];
    const double r = std::sqrt(s.r[0] * s.r[0] + s.r[1] * s.r[1] + s.r[2] * s.r[2]);
    CHECK(0.5 * v2 - mu / r == rel_approx(-mu / (2.0 * el.a)).epsilon(1e-12));
  }
}

TEST_CASE("zonal acceleration derives from the zonal potential energy") {
  const auto p = nominal();
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const Vec3 r{rng.uniform(-2e5, 2e5), rng.uniform(-2e5, 2e5), rng.uniform(-1e5, 1e5)};
    if (std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) < 6e4) continue;
    const auto acc = zonal_acceleration(r, p);
    for (int c = 0; c < 3; ++c) {
      const double h = 1.0;
      auto at = [&](double s) {
        Vec3 x = r;
        x[c] += s;
        return zonal_potential(x, p);
      };
      const double grad = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
      CHECK(std::abs(acc[c] + grad) <= 1e-7 * std::max(std::abs(acc[c]), 1e-3 * std::hypot(acc[0], acc[1], acc[2])));
    }
  }
}

TEST_CASE("zero separation is rejected") {
  const auto p = nominal();
  DirectVector y{};
  y[0] = 1e5;
  y[6] = 1e5;
  CHECK_THROWS_AS(direct_threebody_rhs(y, p), std::domain_error);
  DirectVector z{};
  z[6] = 2e5;
  CHECK_THROWS_AS(direct_threebody_rhs(z, p), std::domain_error);
}

TEST_CASE("two-body limit: Kepler orbit closes") {
  auto p = nominal();
  p.j2 = p.j4 = 0.0;
  p.gm_outer = 0.0;
  auto el5 = miranda_j2000();
  el5.e = 0.05;
  auto el2 = umbriel_j2000();
  const auto y0 = make_direct_state(el5, el2, p);
  const double mu = p.gm_planet + p.gm_inner;
  const double period = constants::two_pi / std::sqrt(mu / std::pow(el5.a, 3));
  DirectModel model(p);
  Abm10<direct_dim> abm(period / 200.0);
  abm.initialize(model, y0, 0.0);
  const int orbits = 100;
  while (abm.time() < orbits * period - 0.5 * abm.dt()) abm.step(model);
  const auto& y = abm.state();
  const auto el = cartesian_to_elements({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}, mu);
  CHECK(std::abs(el.a / el5.a - 1.0) / orbits < 1e-10);
  CHECK(std::abs(el.e - el5.e) / orbits < 1e-10);
  CHECK(std::abs(std::remainder(el.peri - el5.peri, constants::two_pi)) / orbits < 1e-10);
}

TEST_CASE("J2-only node regression") {
  auto p = nominal();
  p.j4 = 0.0;
  p.gm_outer = 0.0;
  const auto el5 = miranda_j2000();
  const auto y0 = make_direct_state(el5, umbriel_j2000(), p);
  const double mu = p.gm_planet + p.gm_inner;
  DirectModel model(p);
  Abm10<direct_dim> abm(1.0 / 40.0);
  abm.initialize(model, y0, 0.0);
  auto pl = uranus();
  const double expected = node_rate(el5.a, el5.inc, pl) * constants::day;  // rad/day
  const double horizon = 100.0 * constants::two_pi / std::abs(expected);
  SlopeFit fit;
  long k = 0;
  while (abm.time() < horizon) {
    abm.step(model);
    if (++k % 400 == 0) {
      const auto& y = abm.state();
      fit.add(abm.time(), cartesian_to_elements({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}, mu).node);
    }
  }
  CHECK(std::abs(fit.slope() / expected - 1.0) < 0.01);
}

TEST_CASE("energy and angular momentum of the full model") {
  const auto p = nominal();
  auto el5 = miranda_j2000();
  el5.a = 127870.0;
  const auto y0 = make_direct_state(el5, umbriel_j2000(), p);
  DirectModel model(p);
  Abm10<direct_dim> abm(1.0 / 80.0);
  abm.initialize(model, y0, 0.0);
  const double e0 = direct_energy(abm.state(), p);
  const double l0 = direct_angular_momentum_z(abm.state(), p);
  double de = 0.0, dl = 0.0;
  while (abm.time() < 5.0 * 365.25) {
    abm.step(model);
    de = std::max(de, std::abs(direct_energy(abm.state(), p) / e0 - 1.0));
    dl = std::max(dl, std::abs(direct_angular_momentum_z(abm.state(), p) / l0 - 1.0));
  }
  CHECK(de < 1e-10);
  CHECK(dl < 1e-10);
}

TEST_CASE("averaged and direct secular drifts agree over 100 years") {
  auto el5 = miranda_j2000();
  auto el2 = umbriel_j2000();
  const auto pd = direct_params(uranus(), miranda(), umbriel());
  DirectModel direct(pd);
  Abm10<direct_dim> d(1.0 / 40.0);
  d.initialize(direct, make_direct_state(el5, el2, pd), 0.0);
  SlopeFit d_node, d_peri;
  long k = 0;
  const double mu5 = pd.gm_planet + pd.gm_inner;
  while (d.time() < 100.0 * 365.25) {
    d.step(direct);
    if (++k % 40 == 0) {
      const auto& y = d.state();
      const auto el = cartesian_to_elements({{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}, mu5);
      d_node.add(d.time() / 365.25, el.node);
      d_peri.add(d.time() / 365.25, el.peri);
    }
  }
  auto pa = averaged_params(uranus(), miranda(), umbriel());
  pa.k2q_planet = 0.0;
  AveragedModel averaged(pa);
  Abm10<averaged_dim> a(17.0 / 300.0);
  a.initialize(averaged, initial_vector(el5, el2), 0.0);
  SlopeFit a_node, a_peri;
  while (a.time() < 100.0) {
    a.step(averaged);
    const auto& y = a.state();
    a_node.add(a.time(), std::atan2(y[4], y[3]));
    a_peri.add(a.time(), std::atan2(y[2], y[1]));
  }
  CHECK(std::abs(a_node.slope() / d_node.slope() - 1.0) < 0.05);
  CHECK(std::abs(a_peri.slope() / d_peri.slope() - 1.0) < 0.05);
}
