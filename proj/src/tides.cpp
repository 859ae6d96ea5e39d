#include "orbtherm/tides.hpp"

#include <cmath>
#include <stdexcept>

namespace orbtherm {

using constants::G;
using constants::pi;
using constants::year;

InertiaMoments moments_of_inertia(double rho, double r_a, double r_b, double r_c) {
  if (!(r_a > 0.0 && r_b > 0.0 && r_c > 0.0)) throw std::domain_error("moments_of_inertia: radii must be positive");
  const double f = 4.0 / 15.0 * rho * pi * r_a * r_b * r_c;
  return {f * (r_b * r_b + r_c * r_c), f * (r_a * r_a + r_b * r_b)};
}

InertiaMoments moments_of_inertia(const BodyPhysical& body) {
  return moments_of_inertia(body.density, body.r_a * 1e3, body.r_b * 1e3, body.r_c * 1e3);
}

double node_rate(double a_km, double inc, const PlanetModel& planet) {
  const double n = mean_motion(a_km, planet);
  const double rho = planet.radius_ref / a_km;
  return -1.5 * n * planet.j2 * rho * rho * std::cos(inc);
}

double equilibrium_obliquity(double inc, double n, double node_rate, const InertiaMoments& moments) {
  if (inc == 0.0) return 0.0;
  const double alpha_c = 1.5 * (moments.i_c - moments.i_a) * n / moments.i_c;
  const double denom = (node_rate != 0.0 ? alpha_c / node_rate : (alpha_c == 0.0 ? 0.0 : HUGE_VAL)) + std::cos(inc);
  if (std::abs(denom) < 1e-12) throw std::domain_error("equilibrium_obliquity: singular Cassini state");
  return std::sin(inc) / denom;
}

double dissipation_rate(double k2_over_q, double planet_gm, double n, double r_s, double a, double e, double eps) {
  if (!(a > 0.0)) throw std::domain_error("dissipation_rate: a must be positive");
  const double gm = planet_gm * 1e9;
  const double se = std::sin(eps);
  return k2_over_q * gm * gm / G * n * std::pow(r_s, 5) / std::pow(a, 6) * (10.5 * e * e + 1.5 * se * se);
}

TidalRates kaula_rates(const OrbitalElements& orbit, const PlanetModel& planet, const BodyPhysical& body,
                       double k2q_p, double k2q_s) {
  if (!(orbit.e < 1.0)) throw std::domain_error("kaula_rates: e must be below 1");
  const double n = mean_motion(orbit.a, planet) * year;  // rad/yr
  const double a = orbit.a;
  const double e = orbit.e;
  const double mr = body.gm / planet.gm;  // m / M
  const double rp5 = std::pow(planet.radius_ref / a, 5);
  const double rs5 = std::pow(body.mean_radius / a, 5);
  TidalRates r;
  r.da_dt = 3.0 * k2q_p * n * mr * rp5 * a * (1.0 + 51.0 / 4.0 * e * e) - 21.0 * k2q_s * n / mr * rs5 * a * e * e;
  r.de_dt = 57.0 / 8.0 * k2q_p * n * mr * rp5 * e - 10.5 * k2q_s * n / mr * rs5 * e;
  return r;
}

HeatingEstimate heating_estimate(double e, double q_factor, double k2, const BodyPhysical& body, double a_km,
                                 const PlanetModel& planet, double cp) {
  if (!(q_factor > 0.0)) throw std::domain_error("heating_estimate: Q must be positive");
  const double n = mean_motion(a_km, planet);
  const double gm = planet.gm * 1e9;
  const double c_est = 10.5 * k2 * gm * gm / G * n * std::pow(body.mean_radius * 1e3, 5) / std::pow(a_km * 1e3, 6);
  HeatingEstimate h;
  h.power = c_est * e * e / q_factor;
  h.dt_per_myr = h.power / body.mass() * constants::myr / cp;
  return h;
}

}  // namespace orbtherm
