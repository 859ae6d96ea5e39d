#pragma once

#include <array>

#include "orbtherm/core_model.hpp"

namespace orbtherm {

// Planetocentric Cartesian state of two satellites: r5 v5 r2 v2 (km, km/day).
inline constexpr std::size_t direct_dim = 12;
using DirectVector = std::array<double, direct_dim>;
using Vec3 = std::array<double, 3>;

struct DirectParams {
  double gm_planet = 0.0;  // km^3/day^2
  double gm_inner = 0.0;
  double gm_outer = 0.0;
  double j2 = 0.0;
  double j4 = 0.0;
  double radius_ref = 0.0;  // km
};

DirectParams direct_params(const PlanetModel& planet, const BodyPhysical& inner, const BodyPhysical& outer);

// Zonal (J2, J4) acceleration of the planet's field at r, per unit satellite mass.
Vec3 zonal_acceleration(const Vec3& r, const DirectParams& p);
// Matching potential energy per unit mass (Kepler part excluded).
double zonal_potential(const Vec3& r, const DirectParams& p);

// Accelerations of both satellites; throws on zero separation.
std::array<Vec3, 2> direct_threebody_rhs(const DirectVector& y, const DirectParams& p);

class DirectModel {
 public:
  explicit DirectModel(DirectParams p) : p_(p) {}
  void operator()(const DirectVector& y, DirectVector& dydt, double t) const;
  const DirectParams& params() const { return p_; }

 private:
  DirectParams p_;
};

// Barycentric energy and z angular momentum, in kg-free units (scaled by 1/G).
double direct_energy(const DirectVector& y, const DirectParams& p);
double direct_angular_momentum_z(const DirectVector& y, const DirectParams& p);

struct CartesianState {
  Vec3 r{};
  Vec3 v{};
};

double solve_kepler(double mean_anomaly, double e);

// Osculating conversions with gravitational parameter mu (consistent length/time units).
CartesianState elements_to_cartesian(const OrbitalElements& el, double mu);
OrbitalElements cartesian_to_elements(const CartesianState& s, double mu);

// Vis-viva osculating semi-major axis.
double osculating_a(const Vec3& r, const Vec3& v, double mu);

DirectVector make_direct_state(const OrbitalElements& inner, const OrbitalElements& outer, const DirectParams& p);

}  // namespace orbtherm
