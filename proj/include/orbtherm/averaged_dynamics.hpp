#pragma once

#include <array>
#include <complex>

#include "orbtherm/core_model.hpp"
#include "orbtherm/laplace.hpp"

namespace orbtherm {

// Averaged state: a5 k5 h5 q5 p5 a2 k2 h2 q2 p2 psi (km, rad); time in years.
inline constexpr std::size_t averaged_dim = 11;
using AveragedVector = std::array<double, averaged_dim>;
using DerivativeVector = AveragedVector;

AveragedVector to_vector(const SystemState& sys);
SystemState to_system_state(const AveragedVector& y, double epoch);
// Psi taken from the mean longitudes.
AveragedVector initial_vector(const OrbitalElements& inner, const OrbitalElements& outer);

enum class Perturber { Outer, Inner };

// Indirect resonant term of the planetocentric expansion.
double indirect_terms(double e2, double lambda5, double lambda2, double peri2, Perturber side);

// Averaged oblateness potential without the eccentricity-independent part; units of gm/km.
double oblateness_term(double a, double e, double inc, const PlanetModel& planet);

struct AveragedParams {
  PlanetModel planet;
  double mu_inner = 0.0;  // satellite mass / planet mass
  double mu_outer = 0.0;
  bool resonant = true;
  bool secular = true;
  bool oblateness = true;
  bool indirect = true;
  // Kaula tides; disabled when every k2/Q is zero.
  double k2q_planet = 0.0;
  double k2q_inner = 0.0;
  double k2q_outer = 0.0;
  double radius_inner = 0.0;  // km
  double radius_outer = 0.0;
};

AveragedParams averaged_params(const PlanetModel& planet, const BodyPhysical& inner, const BodyPhysical& outer);

struct SatellitePartials {
  double value = 0.0;
  std::complex<double> d_zbar;
  std::complex<double> d_zetabar;
  double d_lambda = 0.0;
  double d_a = 0.0;

  std::complex<double> d_z() const { return std::conj(d_zbar); }
  std::complex<double> d_zeta() const { return std::conj(d_zetabar); }
};

struct PerturbationResult {
  SatellitePartials inner;
  SatellitePartials outer;
};

// Long-period potentials per unit mass (km^2/yr^2) and their analytic partials.
PerturbationResult perturbation_and_partials(const AveragedVector& y, const LaplaceTable& table,
                                             const AveragedParams& params);

DerivativeVector equations_of_motion(const AveragedVector& y, const LaplaceTable& table, const AveragedParams& params);

// 3 m5 sqrt(GM a5) + m2 sqrt(GM a2), normalised by the planet mass.
double resonance_momentum(const AveragedVector& y, const AveragedParams& params);

// Callable right-hand side owning its Laplace cache.
class AveragedModel {
 public:
  explicit AveragedModel(AveragedParams params);

  void operator()(const AveragedVector& y, AveragedVector& dydt, double t);

  const AveragedParams& params() const { return params_; }
  AveragedParams& params() { return params_; }
  const LaplaceTable& table() const { return table_; }
  void set_table_alpha(double alpha0);

 private:
  AveragedParams params_;
  LaplaceTable table_;
};

// Planet gm converted to km^3/yr^2.
double gm_per_year(double gm_km3_s2);

}  // namespace orbtherm
