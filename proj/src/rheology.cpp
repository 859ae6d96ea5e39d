#include "orbtherm/rheology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbtherm {

using cplx = std::complex<double>;

std::string to_string(RheologyModel m) {
  switch (m) {
    case RheologyModel::Maxwell: return "maxwell";
    case RheologyModel::Burgers: return "burgers";
    case RheologyModel::Andrade: return "andrade";
  }
  return "unknown";
}

RheologyModel rheology_model_from_string(const std::string& s) {
  if (s == "maxwell") return RheologyModel::Maxwell;
  if (s == "burgers") return RheologyModel::Burgers;
  if (s == "andrade") return RheologyModel::Andrade;
  throw std::invalid_argument("unknown rheology model '" + s + "' (expected maxwell, burgers or andrade)");
}

void RheologyParams::validate() const {
  if (!(mu_elastic > 0.0)) throw std::domain_error("rigidity must be positive");
  if (!(eta_ref > 0.0)) throw std::domain_error("reference viscosity must be positive");
  if (!(t_melt > 0.0)) throw std::domain_error("melting temperature must be positive");
  if (model == RheologyModel::Andrade && !(andrade_alpha >= 0.3 && andrade_alpha <= 0.38))
    throw std::domain_error("Andrade alpha must lie in [0.3, 0.38]");
  if (model == RheologyModel::Burgers && !(burgers_eta_ratio >= 17.0 && burgers_eta_ratio <= 2500.0))
    throw std::domain_error("Burgers viscosity ratio must lie in [17, 2500]");
  if (model == RheologyModel::Burgers && !(burgers_mu_ratio > 0.0))
    throw std::domain_error("Burgers rigidity ratio must be positive");
  if (andrade_beta && !(*andrade_beta > 0.0)) throw std::domain_error("Andrade beta must be positive");
}

double viscosity(double temperature, const RheologyParams& params) {
  if (!(temperature > 0.0)) throw std::domain_error("viscosity: temperature must be positive");
  const double expo = params.e_activation / (params.gas_const * params.t_melt) * (params.t_melt / temperature - 1.0);
  return params.eta_ref * std::exp(expo);
}

VrhRigidity vrh_rigidity(double x_s, double mu_s, double mu_i) {
  if (!(mu_s > 0.0) || !(mu_i > 0.0)) throw std::domain_error("vrh_rigidity: rigidities must be positive");
  if (!(x_s >= 0.0 && x_s <= 1.0)) throw std::domain_error("vrh_rigidity: fraction must lie in [0, 1]");
  VrhRigidity r;
  r.voigt = x_s * mu_s + (1.0 - x_s) * mu_i;
  r.reuss = 1.0 / (x_s / mu_s + (1.0 - x_s) / mu_i);
  r.hill = 0.5 * (r.voigt + r.reuss);
  return r;
}

std::complex<double> rigidity_maxwell(double omega, double mu, double eta) {
  if (!(omega > 0.0)) throw std::domain_error("rigidity_maxwell: omega must be positive");
  // mu * i eta w / (mu + i eta w), rearranged to stay finite for eta w >> mu.
  const double x = mu / (eta * omega);
  const double d = 1.0 + x * x;
  return {mu / d, mu * x / d};
}

std::complex<double> rigidity_burgers(double omega, double mu1, double mu2, double eta1, double eta2) {
  if (!(omega > 0.0 && mu1 > 0.0 && mu2 > 0.0 && eta1 > 0.0 && eta2 > 0.0))
    throw std::domain_error("rigidity_burgers: parameters must be positive");
  const cplx iw{0.0, omega};
  const cplx compliance = 1.0 / mu2 + 1.0 / (iw * eta2) + 1.0 / (mu1 + iw * eta1);
  return 1.0 / compliance;
}

std::complex<double> rigidity_andrade(double omega, double mu, double eta, double alpha, double beta) {
  if (!(omega > 0.0)) throw std::domain_error("rigidity_andrade: omega must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("rigidity_andrade: alpha must lie in (0, 1)");
  if (!(beta >= 0.0)) throw std::domain_error("rigidity_andrade: beta must be non-negative");
  const double creep = beta * std::pow(omega, -alpha) * std::tgamma(1.0 + alpha);
  const double re = 1.0 / mu + creep * std::cos(alpha * constants::pi / 2.0);
  const double im = 1.0 / (eta * omega) + creep * std::sin(alpha * constants::pi / 2.0);
  return 1.0 / cplx{re, -im};
}

std::complex<double> love_number_k2(std::complex<double> mu_tilde, double rho, double g, double radius_m) {
  if (!(rho > 0.0 && g > 0.0 && radius_m > 0.0)) throw std::domain_error("love_number_k2: rho, g, R must be positive");
  return 1.5 / (1.0 + 19.0 * mu_tilde / (2.0 * rho * g * radius_m));
}

std::complex<double> complex_rigidity(double temperature, double omega, const RheologyParams& params) {
  const double eta = viscosity(temperature, params);
  switch (params.model) {
    case RheologyModel::Maxwell: return rigidity_maxwell(omega, params.mu_elastic, eta);
    case RheologyModel::Burgers: {
      const double mu2 = params.mu_elastic;
      return rigidity_burgers(omega, mu2 / params.burgers_mu_ratio, mu2, eta / params.burgers_eta_ratio, eta);
    }
    case RheologyModel::Andrade: {
      const double a = params.andrade_alpha;
      const double beta = params.andrade_beta ? *params.andrade_beta
                                              : std::pow(params.mu_elastic, a - 1.0) * std::pow(eta, -a);
      return rigidity_andrade(omega, params.mu_elastic, eta, a, beta);
    }
  }
  throw std::logic_error("complex_rigidity: unhandled model");
}

TidalResponse tidal_response(double temperature, double omega, const BodyPhysical& body, const RheologyParams& params) {
  TidalResponse r;
  r.viscosity = viscosity(temperature, params);
  r.mu_complex = complex_rigidity(temperature, omega, params);
  r.k2_complex = love_number_k2(r.mu_complex, body.density, body.surface_gravity(), body.mean_radius * 1.0e3);
  r.k2 = std::abs(r.k2_complex);
  r.k2_over_q = std::abs(r.k2_complex.imag());
  r.q_factor = r.k2_over_q > 0.0 ? r.k2 / r.k2_over_q : std::numeric_limits<double>::infinity();
  return r;
}

std::vector<CurvePoint> q_curve_vs_melting(double temperature, double omega, const BodyPhysical& body,
                                           RheologyParams params, double tm_lo, double tm_hi, int count) {
  if (count < 2 || !(tm_hi > tm_lo) || !(tm_lo > 0.0)) throw std::invalid_argument("q_curve_vs_melting: invalid range");
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    params.t_melt = tm_lo + (tm_hi - tm_lo) * i / (count - 1);
    out.push_back({params.t_melt, tidal_response(temperature, omega, body, params).q_factor});
  }
  return out;
}

std::vector<CurvePoint> viscosity_curve(const RheologyParams& params, double t_lo, double t_hi, int count) {
  if (count < 2 || !(t_hi > t_lo) || !(t_lo > 0.0)) throw std::invalid_argument("viscosity_curve: invalid range");
  std::vector<CurvePoint> out;
  for (int i = 0; i < count; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (count - 1);
    out.push_back({t, viscosity(t, params)});
  }
  return out;
}

}  // namespace orbtherm
