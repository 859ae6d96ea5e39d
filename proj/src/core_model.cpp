#include "orbtherm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orbtherm {

using constants::deg;
using constants::two_pi;

void PlanetModel::validate() const {
  if (!(gm > 0.0)) throw std::domain_error("planet gm must be positive");
  if (!(radius_ref > 0.0)) throw std::domain_error("planet radius_ref must be positive");
  if (!(k2_over_q >= 0.0)) throw std::domain_error("planet k2_over_q must be non-negative");
}

double BodyPhysical::surface_gravity() const {
  const double r = mean_radius * 1.0e3;
  return gm * 1.0e9 / (r * r);
}

void BodyPhysical::validate() const {
  if (!(gm > 0.0)) throw std::domain_error("body gm must be positive");
  if (!(mean_radius > 0.0)) throw std::domain_error("body mean_radius must be positive");
  if (!(r_a >= r_b && r_b >= r_c && r_c > 0.0))
    throw std::domain_error("body radii must satisfy r_a >= r_b >= r_c > 0");
  if (!(density > 0.0)) throw std::domain_error("body density must be positive");
}

void OrbitalElements::validate() const {
  if (!(a > 0.0)) throw std::domain_error("semi-major axis must be positive");
  if (!(e >= 0.0 && e < 1.0)) throw std::domain_error("eccentricity must lie in [0, 1)");
  if (!(inc >= 0.0 && inc < constants::pi)) throw std::domain_error("inclination must lie in [0, pi)");
}

double SatelliteDynState::phi() const { return std::sqrt(1.0 - k * k - h * h); }

double wrap_angle(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

double mean_motion(double a_km, double gm) {
  if (!(a_km > 0.0)) throw std::domain_error("mean_motion: semi-major axis must be positive, got " + std::to_string(a_km));
  return std::sqrt(gm / (a_km * a_km * a_km));
}

double mean_motion(double a_km, const PlanetModel& planet) { return mean_motion(a_km, planet.gm); }

SatelliteDynState elements_to_state(const OrbitalElements& el) {
  const double gamma = std::sin(0.5 * el.inc);
  SatelliteDynState st;
  st.a = el.a;
  st.k = el.e * std::cos(el.peri);
  st.h = el.e * std::sin(el.peri);
  st.q = gamma * std::cos(el.node);
  st.p = gamma * std::sin(el.node);
  st.mean_longitude = el.mean_longitude;
  return st;
}

RecoveredElements state_to_elements(const SatelliteDynState& st) {
  RecoveredElements out;
  OrbitalElements& el = out.elements;
  el.a = st.a;
  el.e = std::hypot(st.k, st.h);
  const double gamma = std::hypot(st.q, st.p);
  el.inc = 2.0 * std::asin(std::min(gamma, 1.0));
  out.pericenter_defined = el.e >= undefined_angle_threshold;
  out.node_defined = gamma >= undefined_angle_threshold;
  el.peri = out.pericenter_defined ? wrap_angle(std::atan2(st.h, st.k)) : 0.0;
  el.node = out.node_defined ? wrap_angle(std::atan2(st.p, st.q)) : 0.0;
  el.mean_longitude = wrap_angle(st.mean_longitude);
  return out;
}

namespace {

std::array<double, 6> angles_from(double base, double w5, double w2, double o5, double o2) {
  return {wrap_angle(0.5 * (base + 2.0 * o5)), wrap_angle(0.5 * (base + o5 + o2)),
          wrap_angle(0.5 * (base + 2.0 * o2)), wrap_angle(0.5 * (base + 2.0 * w2)),
          wrap_angle(0.5 * (base + w5 + w2)),  wrap_angle(0.5 * (base + 2.0 * w5))};
}

}  // namespace

std::array<double, 6> resonant_angles(const OrbitalElements& inner, const OrbitalElements& outer) {
  const double base = inner.mean_longitude - 3.0 * outer.mean_longitude;
  return angles_from(base, inner.peri, outer.peri, inner.node, outer.node);
}

std::array<double, 6> resonant_angles(const SystemState& sys) {
  const auto& s5 = sys.sat_inner;
  const auto& s2 = sys.sat_outer;
  return angles_from(-sys.psi, std::atan2(s5.h, s5.k), std::atan2(s2.h, s2.k), std::atan2(s5.p, s5.q),
                     std::atan2(s2.p, s2.q));
}

PlanetModel uranus() {
  PlanetModel p;
  p.gm = 5793964.0;
  p.j2 = 3341.29e-6;
  p.j4 = -30.44e-6;
  p.radius_ref = 26200.0;
  p.k2_over_q = 5.2e-5;
  return p;
}

BodyPhysical miranda() {
  BodyPhysical b;
  b.gm = 4.4;
  b.mean_radius = 235.8;
  b.r_a = 240.4;
  b.r_b = 234.2;
  b.r_c = 232.9;
  b.density = 1200.0;
  return b;
}

BodyPhysical umbriel() {
  BodyPhysical b;
  b.gm = 81.5;
  b.mean_radius = 584.7;
  b.r_a = b.r_b = b.r_c = 584.7;
  const double r = b.mean_radius * 1.0e3;
  b.density = b.mass() / (4.0 / 3.0 * constants::pi * r * r * r);
  return b;
}

OrbitalElements miranda_j2000() {
  OrbitalElements el;
  el.a = 129900.0;
  el.e = 0.0013;
  el.peri = 68.312 * deg;
  el.inc = 4.338 * deg;
  el.node = 326.438 * deg;
  el.mean_longitude = wrap_angle((311.330 + 68.312) * deg);
  return el;
}

OrbitalElements umbriel_j2000() {
  OrbitalElements el;
  el.a = 266000.0;
  el.e = 0.0039;
  el.peri = 84.709 * deg;
  el.inc = 0.128 * deg;
  el.node = 33.485 * deg;
  el.mean_longitude = wrap_angle((12.469 + 84.709) * deg);
  return el;
}

}  // namespace orbtherm
