#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbtherm/core_model.hpp"

namespace orbtherm {

struct ComponentProps {
  double rho = 0.0;  // kg/m^3
  double cp = 0.0;   // J/kg/K
  double k = 0.0;    // W/m/K
  double mu = 0.0;   // Pa
};

ComponentProps ice_props();
ComponentProps silicate_props();

struct MixtureProps {
  double x_s = 0.0;  // silicate mass fraction
  double f_s = 0.0;  // silicate volume fraction
  double rho = 0.0;
  double cp = 0.0;
  double k_cond = 0.0;

  double alpha_diff() const { return k_cond / (rho * cp); }
};

MixtureProps mixture_properties(double x_s, double f_s, double rho_body, const ComponentProps& ice = ice_props(),
                                const ComponentProps& silicate = silicate_props());

// Silicate fractions of a two-component ice/rock body of bulk density rho_body.
std::pair<double, double> silicate_fractions(double rho_body, const ComponentProps& ice = ice_props(),
                                             const ComponentProps& silicate = silicate_props());

// Tabulated homogeneous body used for Miranda (rho 1200, Cp 900, k 5.2, x_s 0.37, f_s 0.45).
MixtureProps miranda_table_mixture();

struct Isotope {
  std::string name;
  double heat_rate = 0.0;      // W per kg of parent isotope
  double half_life_yr = 0.0;
  double isotopic_fraction = 0.0;  // present (long-lived) or initial (short-lived)
  bool short_lived = false;
  double concentration = 0.0;  // kg of isotope per kg of silicate at the reference epoch

  double decay_lambda() const;  // 1/s
};

struct RadiogenicInventory {
  std::vector<Isotope> isotopes;
  double present_epoch_yr = 4.56e9;  // time since formation of "today"
};

struct RadiogenicCalibration {
  double present_long_lived = 7.0e-12;  // W/kg of silicate today
  double initial_short_lived = 2.0e-7;  // W/kg of silicate at formation
};

RadiogenicInventory calibrated_inventory(const RadiogenicCalibration& cal = {});

enum class IsotopeSet { All, LongLived, ShortLived };

// Heat production per kg of silicate, W/kg, t in years since formation.
double radiogenic_power(double t_yr, const RadiogenicInventory& inv, IsotopeSet set = IsotopeSet::All);

// Time average of radiogenic_power over [t0, t1], exact for exponential decay.
double radiogenic_mean_power(double t0_yr, double t1_yr, const RadiogenicInventory& inv,
                             IsotopeSet set = IsotopeSet::All);

struct ThermalGrid {
  int n_points = 0;
  double radius = 0.0;  // m
  std::vector<double> radii;  // m
  std::vector<double> temps;  // K
  MixtureProps props;
  double t_surf = 0.0;

  double dr() const { return radius / (n_points - 1); }
};

ThermalGrid make_uniform_grid(double radius_m, int n_points, const MixtureProps& props, double t_surf, double t_init);

// Control-volume shell volumes, m^3; they sum to the sphere volume.
std::vector<double> shell_volumes(const ThermalGrid& grid);

double mean_temperature(const ThermalGrid& grid);

// Sum of rho cp T dV over the interior (non-Dirichlet) control volumes, J.
double interior_heat_content(const ThermalGrid& grid);

// Conductive power leaving the interior through the last interface, W.
double surface_heat_loss(const ThermalGrid& grid);

// One backward-Euler step; source in W/m^3 per node (surface entry ignored).
ThermalGrid step_conduction(ThermalGrid grid, double dt, std::span<const double> source);

// In-place variant with a uniform volumetric source.
void advance_uniform(ThermalGrid& grid, double dt, double source);

struct InitialProfiles {
  ThermalGrid warm;
  ThermalGrid cold;
};

struct ProfileSettings {
  double duration_yr = 4.6e9;
  int n_points = 200;
};

InitialProfiles initial_profiles(double radius_m, const MixtureProps& props, double t_surf,
                                 const RadiogenicInventory& inv, const ProfileSettings& settings = {});

// Single radiogenic-only profile from uniform t_surf.
ThermalGrid radiogenic_profile(double radius_m, const MixtureProps& props, double t_surf, const RadiogenicInventory& inv,
                               IsotopeSet set, const ProfileSettings& settings = {});

double conduction_timescale(double radius_m, const MixtureProps& props);  // s

}  // namespace orbtherm
