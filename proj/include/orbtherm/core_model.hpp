#pragma once

#include <array>
#include <numbers>

namespace orbtherm {

namespace constants {
inline constexpr double G = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double day = 86400.0;     // s
inline constexpr double year = 365.25 * day;
inline constexpr double myr = 1.0e6 * year;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double deg = std::numbers::pi / 180.0;
}  // namespace constants

struct PlanetModel {
  double gm = 0.0;          // km^3/s^2
  double j2 = 0.0;
  double j4 = 0.0;
  double radius_ref = 0.0;  // km, reference radius of the zonal harmonics
  double k2_over_q = 0.0;

  void validate() const;
};

struct BodyPhysical {
  double gm = 0.0;           // km^3/s^2
  double mean_radius = 0.0;  // km
  double r_a = 0.0;          // km, sub-planet equatorial
  double r_b = 0.0;          // km, along-orbit equatorial
  double r_c = 0.0;          // km, polar
  double density = 0.0;      // kg/m^3

  double mass() const { return gm * 1.0e9 / constants::G; }
  // Surface gravity of a homogeneous sphere, m/s^2.
  double surface_gravity() const;
  void validate() const;
};

struct OrbitalElements {
  double a = 0.0;    // km
  double e = 0.0;
  double inc = 0.0;  // rad
  double peri = 0.0;  // longitude of pericenter, rad
  double node = 0.0;  // rad
  double mean_longitude = 0.0;  // rad

  void validate() const;
};

// Nonsingular variables: z = k + i h, zeta = q + i p, gamma = sin(I/2).
struct SatelliteDynState {
  double a = 0.0;
  double k = 0.0;
  double h = 0.0;
  double q = 0.0;
  double p = 0.0;
  double mean_longitude = 0.0;

  double phi() const;
};

struct SystemState {
  SatelliteDynState sat_inner;
  SatelliteDynState sat_outer;
  double psi = 0.0;    // 3 lambda_outer - lambda_inner
  double epoch = 0.0;  // yr
};

struct RecoveredElements {
  OrbitalElements elements;
  bool pericenter_defined = true;
  bool node_defined = true;
};

inline constexpr double undefined_angle_threshold = 1e-14;

double wrap_angle(double x);

// Keplerian mean motion, rad/s.
double mean_motion(double a_km, double gm);
double mean_motion(double a_km, const PlanetModel& planet);

SatelliteDynState elements_to_state(const OrbitalElements& el);
RecoveredElements state_to_elements(const SatelliteDynState& st);

// theta_1..theta_6 of the second-order 3:1 resonance (inner index 5, outer 2).
//   2 theta1 = l5 - 3 l2 + 2 Om5     2 theta4 = l5 - 3 l2 + 2 w2
//   2 theta2 = l5 - 3 l2 + Om5 + Om2 2 theta5 = l5 - 3 l2 + w5 + w2
//   2 theta3 = l5 - 3 l2 + 2 Om2     2 theta6 = l5 - 3 l2 + 2 w5
std::array<double, 6> resonant_angles(const OrbitalElements& inner, const OrbitalElements& outer);

// Same angles with the longitude combination taken from the tracked Psi.
std::array<double, 6> resonant_angles(const SystemState& sys);

// Presets.
PlanetModel uranus();
BodyPhysical miranda();
BodyPhysical umbriel();
OrbitalElements miranda_j2000();
OrbitalElements umbriel_j2000();

}  // namespace orbtherm
