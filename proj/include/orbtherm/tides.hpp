#pragma once

#include "orbtherm/core_model.hpp"

namespace orbtherm {

struct TidalRates {
  double da_dt = 0.0;  // km/yr
  double de_dt = 0.0;  // 1/yr
};

struct InertiaMoments {
  double i_a = 0.0;  // kg m^2
  double i_c = 0.0;
};

// Radii in metres.
InertiaMoments moments_of_inertia(double rho, double r_a, double r_b, double r_c);
InertiaMoments moments_of_inertia(const BodyPhysical& body);

// Secular J2 node regression, rad/s.
double node_rate(double a_km, double inc, const PlanetModel& planet);

// Cassini state 1 obliquity, rad.
double equilibrium_obliquity(double inc, double n, double node_rate, const InertiaMoments& moments);

// Tidal power dissipated in the satellite, W. planet_gm in km^3/s^2, n in rad/s, lengths in metres.
double dissipation_rate(double k2_over_q, double planet_gm, double n, double r_s, double a, double e, double eps);

// Planet and satellite tides on (a, e); n is Keplerian.
TidalRates kaula_rates(const OrbitalElements& orbit, const PlanetModel& planet, const BodyPhysical& body,
                       double k2q_p, double k2q_s);

struct HeatingEstimate {
  double power = 0.0;       // W
  double dt_per_myr = 0.0;  // K
};

HeatingEstimate heating_estimate(double e, double q_factor, double k2, const BodyPhysical& body, double a_km,
                                 const PlanetModel& planet, double cp);

}  // namespace orbtherm
