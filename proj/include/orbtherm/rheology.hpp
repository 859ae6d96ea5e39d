#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "orbtherm/core_model.hpp"

namespace orbtherm {

enum class RheologyModel { Maxwell, Burgers, Andrade };

std::string to_string(RheologyModel m);
RheologyModel rheology_model_from_string(const std::string& s);

struct RheologyParams {
  RheologyModel model = RheologyModel::Maxwell;
  double mu_elastic = 27.0e9;   // Pa
  double eta_ref = 1.0e15;      // Pa s, viscosity at the melting temperature
  double t_melt = 273.0;        // K
  double e_activation = 50.0e3;  // J/mol
  double gas_const = 8.31;      // J/mol/K
  double burgers_mu_ratio = 1.0;   // mu2 / mu1
  double burgers_eta_ratio = 17.0;  // eta2 / eta1
  double andrade_alpha = 0.33;
  // When unset, beta = mu^(alpha-1) / eta^alpha (transient and steady creep share a timescale).
  std::optional<double> andrade_beta;

  void validate() const;
};

struct TidalResponse {
  std::complex<double> mu_complex;
  std::complex<double> k2_complex;
  double k2 = 0.0;
  double q_factor = 0.0;
  double k2_over_q = 0.0;
  double viscosity = 0.0;
};

struct VrhRigidity {
  double voigt = 0.0;
  double reuss = 0.0;
  double hill = 0.0;
};

double viscosity(double temperature, const RheologyParams& params);

VrhRigidity vrh_rigidity(double x_s, double mu_s, double mu_i);

std::complex<double> rigidity_maxwell(double omega, double mu, double eta);

// (mu2, eta2) form the Maxwell element (steady creep), (mu1, eta1) the Kelvin-Voigt element.
std::complex<double> rigidity_burgers(double omega, double mu1, double mu2, double eta1, double eta2);

std::complex<double> rigidity_andrade(double omega, double mu, double eta, double alpha, double beta);

std::complex<double> love_number_k2(std::complex<double> mu_tilde, double rho, double g, double radius_m);

std::complex<double> complex_rigidity(double temperature, double omega, const RheologyParams& params);

TidalResponse tidal_response(double temperature, double omega, const BodyPhysical& body, const RheologyParams& params);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

// Q against melting temperature at fixed body temperature.
std::vector<CurvePoint> q_curve_vs_melting(double temperature, double omega, const BodyPhysical& body,
                                           RheologyParams params, double tm_lo, double tm_hi, int count);

// Viscosity against temperature.
std::vector<CurvePoint> viscosity_curve(const RheologyParams& params, double t_lo, double t_hi, int count);

}  // namespace orbtherm
