#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "orbtherm/core_model.hpp"
#include "support.hpp"

using namespace orbtherm;
using constants::deg;
using constants::two_pi;
using testing_support::Rng;

namespace {
double deg_per_day(double n_rad_s) { return n_rad_s * constants::day / deg; }
}  // namespace

TEST_CASE("mean motion") {
  const auto u = uranus();
  CHECK(deg_per_day(mean_motion(129900.0, u)) == rel_approx(254.6906576).epsilon(0.002));
  CHECK(deg_per_day(mean_motion(266000.0, u)) == rel_approx(86.8688879).epsilon(0.002));
  CHECK(deg_per_day(mean_motion(129900.0, u)) == rel_approx(254.5).epsilon(5e-4));
  CHECK(deg_per_day(mean_motion(266000.0, u)) == rel_approx(86.86).epsilon(5e-4));
  CHECK(mean_motion(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(mean_motion(0.0, u), std::domain_error);
  CHECK_THROWS_AS(mean_motion(-5.0, 1.0), std::domain_error);
}

TEST_CASE("body records") {
  for (const auto& b : {miranda(), umbriel()}) {
    CHECK(b.mass() * constants::G == rel_approx(b.gm * 1e9).epsilon(1e-12));
    CHECK_NOTHROW(b.validate());
  }
  auto bad = miranda();
  bad.r_c = 250.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  auto p = uranus();
  CHECK_NOTHROW(p.validate());
  p.k2_over_q = -1.0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("elements to nonsingular state") {
  OrbitalElements el;
  el.a = 1000.0;
  el.peri = 1.3;
  el.node = 2.2;
  el.mean_longitude = 0.4;
  auto st = elements_to_state(el);
  CHECK(st.k == 0.0);
  CHECK(st.h == 0.0);
  CHECK(st.q == 0.0);
  CHECK(st.p == 0.0);
  CHECK(st.phi() == 1.0);

  const auto m = miranda_j2000();
  st = elements_to_state(m);
  CHECK(st.k == rel_approx(0.0013 * std::cos(68.312 * deg)).epsilon(1e-14));
  CHECK(st.h == rel_approx(0.0013 * std::sin(68.312 * deg)).epsilon(1e-14));
  const double gamma = std::sin(0.5 * 4.338 * deg);
  CHECK(st.q == rel_approx(gamma * std::cos(326.438 * deg)).epsilon(1e-14));
  CHECK(st.p == rel_approx(gamma * std::sin(326.438 * deg)).epsilon(1e-14));
}

TEST_CASE("state to elements conventions") {
  SatelliteDynState st{5000.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  const auto r = state_to_elements(st);
  CHECK(r.elements.e == 0.0);
  CHECK(r.elements.peri == 0.0);
  CHECK(r.elements.inc == 0.0);
  CHECK(r.elements.node == 0.0);
  CHECK_FALSE(r.pericenter_defined);
  CHECK_FALSE(r.node_defined);

  const auto m = miranda_j2000();
  const auto back = state_to_elements(elements_to_state(m)).elements;
  CHECK(back.e == rel_approx(m.e).epsilon(1e-12));
  CHECK(back.inc == rel_approx(m.inc).epsilon(1e-12));
  CHECK(back.peri == rel_approx(m.peri).epsilon(1e-12));
  CHECK(back.node == rel_approx(m.node).epsilon(1e-12));
}

TEST_CASE("round trip property over random elements") {
  Rng rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    OrbitalElements el;
    el.a = rng.uniform(1e4, 1e6);
    el.e = rng.uniform(0.0, 0.9);
    el.inc = rng.uniform(0.0, constants::pi / 2);
    el.peri = rng.uniform(0.0, two_pi);
    el.node = rng.uniform(0.0, two_pi);
    el.mean_longitude = rng.uniform(0.0, two_pi);
    const auto st = elements_to_state(el);
    REQUIRE(st.phi() > 0.0);
    REQUIRE(st.phi() <= 1.0);
    const auto back = state_to_elements(st).elements;
    CHECK(std::abs(back.a - el.a) <= 1e-12 * el.a);
    CHECK(std::abs(back.e - el.e) <= 1e-12);
    CHECK(std::abs(back.inc - el.inc) <= 1e-12);
    if (el.e > 1e-6) CHECK(std::abs(std::remainder(back.peri - el.peri, two_pi)) <= 1e-12 / el.e + 1e-12);
    if (el.inc > 1e-6) CHECK(std::abs(std::remainder(back.node - el.node, two_pi)) <= 1e-12 / el.inc + 1e-12);
    for (double ang : {back.peri, back.node, back.mean_longitude}) {
      CHECK(ang >= 0.0);
      CHECK(ang < two_pi);
    }
  }
}

TEST_CASE("resonant angles") {
  OrbitalElements in, out;
  in.a = 1.0;
  out.a = 2.0;
  out.mean_longitude = 0.7;
  in.mean_longitude = wrap_angle(3.0 * 0.7);
  in.node = 0.0;
  auto th = resonant_angles(in, out);
  CHECK(std::min(th[0], two_pi - th[0]) < 1e-12);

  in.mean_longitude = 0.0;
  out.mean_longitude = 0.0;
  in.peri = constants::pi;
  th = resonant_angles(in, out);
  CHECK(th[5] == rel_approx(constants::pi).epsilon(1e-14));

  // Independent evaluation of the six combinations at the J2000 elements.
  const auto m = miranda_j2000();
  const auto u = umbriel_j2000();
  const double base = m.mean_longitude - 3.0 * u.mean_longitude;
  const double expect[6] = {base + 2 * m.node, base + m.node + u.node, base + 2 * u.node,
                            base + 2 * u.peri, base + m.peri + u.peri, base + 2 * m.peri};
  th = resonant_angles(m, u);
  for (int k = 0; k < 6; ++k) {
    const double two_theta = expect[k];
    // theta is defined through 2 theta; compare the doubled angle modulo 2 pi.
    CHECK(std::abs(std::remainder(2.0 * th[static_cast<std::size_t>(k)] - two_theta, two_pi)) < 1e-12);
    CHECK(th[static_cast<std::size_t>(k)] >= 0.0);
    CHECK(th[static_cast<std::size_t>(k)] < two_pi);
  }

  SystemState sys;
  sys.sat_inner = elements_to_state(m);
  sys.sat_outer = elements_to_state(u);
  sys.psi = 3.0 * u.mean_longitude - m.mean_longitude;
  const auto th2 = resonant_angles(sys);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(std::remainder(2.0 * (th2[k] - th[k]), two_pi)) < 1e-12);
}

TEST_CASE("wrap_angle range") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double w = wrap_angle(rng.uniform(-100.0, 100.0));
    CHECK(w >= 0.0);
    CHECK(w < two_pi);
  }
  CHECK(wrap_angle(-1e-300) < two_pi);
}
