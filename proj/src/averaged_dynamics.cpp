#include "orbtherm/averaged_dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace orbtherm {

using cplx = std::complex<double>;
using constants::year;

double gm_per_year(double gm_km3_s2) { return gm_km3_s2 * year * year; }

AveragedVector to_vector(const SystemState& sys) {
  const auto& s5 = sys.sat_inner;
  const auto& s2 = sys.sat_outer;
  return {s5.a, s5.k, s5.h, s5.q, s5.p, s2.a, s2.k, s2.h, s2.q, s2.p, sys.psi};
}

SystemState to_system_state(const AveragedVector& y, double epoch) {
  SystemState sys;
  sys.sat_inner = {y[0], y[1], y[2], y[3], y[4], 0.0};
  sys.sat_outer = {y[5], y[6], y[7], y[8], y[9], 0.0};
  sys.psi = y[10];
  sys.epoch = epoch;
  return sys;
}

AveragedVector initial_vector(const OrbitalElements& inner, const OrbitalElements& outer) {
  SystemState sys;
  sys.sat_inner = elements_to_state(inner);
  sys.sat_outer = elements_to_state(outer);
  sys.psi = wrap_angle(3.0 * outer.mean_longitude - inner.mean_longitude);
  return to_vector(sys);
}

double indirect_terms(double e2, double lambda5, double lambda2, double peri2, Perturber side) {
  const double c = side == Perturber::Outer ? -27.0 / 8.0 : -3.0 / 8.0;
  return c * e2 * e2 * std::cos(lambda5 - 3.0 * lambda2 + 2.0 * peri2);
}

namespace {

struct OblatenessCoeffs {
  double b_e;      // multiplies e^2
  double b_i;      // multiplies sin^2 I
  double db_e_da;  // d/da of (b_e / a)
  double db_i_da;
};

// (gm / 2a) [b_e e^2 - b_i sin^2 I] with b = c2 rho^2 + c4 rho^4, rho = R/a.
OblatenessCoeffs oblateness_coeffs(double a, const PlanetModel& planet) {
  const double r2 = planet.radius_ref * planet.radius_ref;
  const double r4 = r2 * r2;
  const double j2 = planet.j2;
  const double j4 = planet.j4;
  const double c2 = 1.5 * j2;
  const double c4e = -9.0 / 8.0 * j2 * j2 - 15.0 / 4.0 * j4;
  const double c4i = -27.0 / 8.0 * j2 * j2 - 15.0 / 4.0 * j4;
  const double a2 = a * a;
  const double a4 = a2 * a2;
  OblatenessCoeffs o;
  o.b_e = c2 * r2 / a2 + c4e * r4 / a4;
  o.b_i = c2 * r2 / a2 + c4i * r4 / a4;
  // d/da [b / a] = -3 c2 R^2 / a^4 - 5 c4 R^4 / a^6
  o.db_e_da = -3.0 * c2 * r2 / (a4) - 5.0 * c4e * r4 / (a4 * a2);
  o.db_i_da = -3.0 * c2 * r2 / (a4) - 5.0 * c4i * r4 / (a4 * a2);
  return o;
}

}  // namespace

double oblateness_term(double a, double e, double inc, const PlanetModel& planet) {
  if (!(a > 0.0)) throw std::domain_error("oblateness_term: a must be positive");
  const auto o = oblateness_coeffs(a, planet);
  const double si = std::sin(inc);
  return planet.gm / (2.0 * a) * (o.b_e * e * e - o.b_i * si * si);
}

AveragedParams averaged_params(const PlanetModel& planet, const BodyPhysical& inner, const BodyPhysical& outer) {
  AveragedParams p;
  p.planet = planet;
  p.mu_inner = inner.gm / planet.gm;
  p.mu_outer = outer.gm / planet.gm;
  p.k2q_planet = planet.k2_over_q;
  p.radius_inner = inner.mean_radius;
  p.radius_outer = outer.mean_radius;
  return p;
}

namespace {

struct Unpacked {
  double a5, a2;
  cplx z5, z2, s5, s2;
  cplx E;
};

Unpacked unpack(const AveragedVector& y) {
  return {y[0], y[5], {y[1], y[2]}, {y[6], y[7]}, {y[3], y[4]}, {y[8], y[9]}, std::polar(1.0, -y[10])};
}

}  // namespace

PerturbationResult perturbation_and_partials(const AveragedVector& y, const LaplaceTable& table,
                                             const AveragedParams& params) {
  const Unpacked u = unpack(y);
  if (!(u.a5 > 0.0 && u.a2 > u.a5)) throw std::domain_error("perturbation: require 0 < a_inner < a_outer");
  const double alpha = u.a5 / u.a2;
  const double gm = gm_per_year(params.planet.gm);
  const PerturbationCoeffs pc = table.evaluate(alpha);
  const auto& F = pc.f;
  const auto& dF = pc.df;
  const auto& C = pc.c;
  const auto& dC = pc.dc;

  PerturbationResult out;
  SatellitePartials& m = out.inner;
  SatellitePartials& o = out.outer;

  const double A5 = gm * params.mu_outer / u.a2;
  const double A2 = gm * params.mu_inner / u.a2;

  // Resonant polynomial Q = sum F_k P_k and its alpha-derivative.
  cplx q_z5{}, q_z2{}, q_s5{}, q_s2{};
  double res_val5 = 0.0, res_val2 = 0.0, dres5 = 0.0, dres2 = 0.0;
  double im5 = 0.0, im2 = 0.0;
  if (params.resonant) {
    const cplx Q = F[0] * u.s5 * u.s5 + F[1] * u.s5 * u.s2 + F[2] * u.s2 * u.s2 + F[3] * u.z2 * u.z2 +
                   F[4] * u.z5 * u.z2 + F[5] * u.z5 * u.z5;
    const cplx dQ = dF[0] * u.s5 * u.s5 + dF[1] * u.s5 * u.s2 + dF[2] * u.s2 * u.s2 + dF[3] * u.z2 * u.z2 +
                    dF[4] * u.z5 * u.z2 + dF[5] * u.z5 * u.z5;
    q_z5 = F[4] * u.z2 + 2.0 * F[5] * u.z5;
    q_z2 = 2.0 * F[3] * u.z2 + F[4] * u.z5;
    q_s5 = 2.0 * F[0] * u.s5 + F[1] * u.s2;
    q_s2 = F[1] * u.s5 + 2.0 * F[2] * u.s2;
    const cplx EQ = u.E * Q;
    res_val5 = res_val2 = EQ.real();
    dres5 = dres2 = (u.E * dQ).real();
    im5 = im2 = EQ.imag();
  }

  // Indirect parts: c5 = -27/8 alpha (Miranda), c2 = -3/(8 alpha^2) (Umbriel), both on E z2^2.
  cplx ind_z2_2{};
  if (params.indirect) {
    const cplx Ez = u.E * u.z2 * u.z2;
    const double c5 = -27.0 / 8.0 * alpha;
    const double c2 = -3.0 / (8.0 * alpha * alpha);
    res_val5 += c5 * Ez.real();
    res_val2 += c2 * Ez.real();
    im5 += c5 * Ez.imag();
    im2 += c2 * Ez.imag();
    dres5 += -27.0 / 8.0 * Ez.real();
    dres2 += 3.0 / (4.0 * alpha * alpha * alpha) * Ez.real();
    ind_z2_2 = 2.0 * c2 * u.z2;
  }

  double sec = 0.0, dsec = 0.0;
  if (params.secular) {
    const double e55 = std::norm(u.z5), e22 = std::norm(u.z2), g55 = std::norm(u.s5), g22 = std::norm(u.s2);
    const double ze = (u.z2 * std::conj(u.z5)).real();
    const double zi = (u.s2 * std::conj(u.s5)).real();
    sec = C[0] + C[1] * (e55 + e22) + C[2] * (g55 + g22) + C[3] * ze + C[4] * zi;
    dsec = dC[0] + dC[1] * (e55 + e22) + dC[2] * (g55 + g22) + dC[3] * ze + dC[4] * zi;
  }

  // Miranda.
  m.value = A5 * (res_val5 + sec);
  m.d_lambda = -A5 * im5;
  m.d_zbar = A5 * 0.5 * std::conj(u.E * q_z5);
  m.d_zetabar = A5 * 0.5 * std::conj(u.E * q_s5);
  m.d_a = A5 / u.a2 * (dres5 + dsec);
  // Umbriel.
  o.value = A2 * (res_val2 + sec);
  o.d_lambda = 3.0 * A2 * im2;
  o.d_zbar = A2 * 0.5 * std::conj(u.E * (q_z2 + ind_z2_2));
  o.d_zetabar = A2 * 0.5 * std::conj(u.E * q_s2);
  o.d_a = -A2 / u.a2 * (res_val2 + sec) - A2 * alpha / u.a2 * (dres2 + dsec);

  if (params.secular) {
    m.d_zbar += A5 * (C[1] * u.z5 + 0.5 * C[3] * u.z2);
    m.d_zetabar += A5 * (C[2] * u.s5 + 0.5 * C[4] * u.s2);
    o.d_zbar += A2 * (C[1] * u.z2 + 0.5 * C[3] * u.z5);
    o.d_zetabar += A2 * (C[2] * u.s2 + 0.5 * C[4] * u.s5);
  }

  if (params.oblateness) {
    auto add = [&](SatellitePartials& sp, double a, cplx z, cplx s) {
      const auto ob = oblateness_coeffs(a, params.planet);
      const double ee = std::norm(z);
      const double gg = std::norm(s);
      const double sin2i = 4.0 * gg * (1.0 - gg);
      const double half = gm / (2.0 * a);
      sp.value += half * (ob.b_e * ee - ob.b_i * sin2i);
      sp.d_zbar += half * ob.b_e * z;
      sp.d_zetabar -= half * ob.b_i * 4.0 * s * (1.0 - 2.0 * gg);
      sp.d_a += 0.5 * gm * (ob.db_e_da * ee - ob.db_i_da * sin2i);
    };
    add(m, u.a5, u.z5, u.s5);
    add(o, u.a2, u.z2, u.s2);
  }
  return out;
}

namespace {

struct Rates {
  double da;
  cplx dz;
  cplx dzeta;
  double dlambda;
};

Rates lagrange(double a, cplx z, cplx s, double n, const SatellitePartials& R) {
  const double phi = std::sqrt(1.0 - std::norm(z));
  const cplx I{0.0, 1.0};
  const double na = n * a;
  const double na2 = na * a;
  const cplx Rz = R.d_z();
  const cplx Rs = R.d_zeta();
  const double s_term = 2.0 * (s * Rs).real();      // zeta R_zeta + conj
  const double z_sum = 2.0 * (z * Rz).real();       // z R_z + zbar R_zbar
  const cplx z_diff = z * Rz - std::conj(z) * R.d_zbar;  // z R_z - zbar R_zbar
  Rates r;
  r.da = 2.0 / na * R.d_lambda;
  r.dz = I * phi / na2 * (2.0 * R.d_zbar + I / (1.0 + phi) * z * R.d_lambda + z / (2.0 * phi * phi) * s_term);
  r.dzeta = I / (2.0 * na2 * phi) * (R.d_zetabar + I * s * R.d_lambda - s * z_diff);
  r.dlambda = n - 2.0 / na * R.d_a + phi / (na2 * (1.0 + phi)) * z_sum + s_term / (2.0 * na2 * phi);
  return r;
}

void add_tides(double a, cplx z, double radius, double mu, double k2q_s, const AveragedParams& p, double n,
               double& da, cplx& dz) {
  const double e2 = std::norm(z);
  const double rp5 = std::pow(p.planet.radius_ref / a, 5);
  const double rs5 = std::pow(radius / a, 5);
  da += 3.0 * p.k2q_planet * n * mu * rp5 * a * (1.0 + 51.0 / 4.0 * e2) - 21.0 * k2q_s * n / mu * rs5 * a * e2;
  const double de_over_e = 57.0 / 8.0 * p.k2q_planet * n * mu * rp5 - 10.5 * k2q_s * n / mu * rs5;
  dz += de_over_e * z;
}

}  // namespace

DerivativeVector equations_of_motion(const AveragedVector& y, const LaplaceTable& table, const AveragedParams& params) {
  const auto R = perturbation_and_partials(y, table, params);
  const Unpacked u = unpack(y);
  const double gm = gm_per_year(params.planet.gm);
  const double n5 = std::sqrt(gm / (u.a5 * u.a5 * u.a5));
  const double n2 = std::sqrt(gm / (u.a2 * u.a2 * u.a2));
  Rates r5 = lagrange(u.a5, u.z5, u.s5, n5, R.inner);
  Rates r2 = lagrange(u.a2, u.z2, u.s2, n2, R.outer);
  if (params.k2q_planet != 0.0 || params.k2q_inner != 0.0 || params.k2q_outer != 0.0) {
    add_tides(u.a5, u.z5, params.radius_inner, params.mu_inner, params.k2q_inner, params, n5, r5.da, r5.dz);
    add_tides(u.a2, u.z2, params.radius_outer, params.mu_outer, params.k2q_outer, params, n2, r2.da, r2.dz);
  }
  return {r5.da, r5.dz.real(), r5.dz.imag(), r5.dzeta.real(), r5.dzeta.imag(),
          r2.da, r2.dz.real(), r2.dz.imag(), r2.dzeta.real(), r2.dzeta.imag(),
          3.0 * r2.dlambda - r5.dlambda};
}

double resonance_momentum(const AveragedVector& y, const AveragedParams& params) {
  const double gm = gm_per_year(params.planet.gm);
  return 3.0 * params.mu_inner * std::sqrt(gm * y[0]) + params.mu_outer * std::sqrt(gm * y[5]);
}

AveragedModel::AveragedModel(AveragedParams params) : params_(std::move(params)) {}

void AveragedModel::set_table_alpha(double alpha0) { table_ = LaplaceTable(alpha0); }

void AveragedModel::operator()(const AveragedVector& y, AveragedVector& dydt, double /*t*/) {
  for (std::size_t i = 0; i < averaged_dim; ++i)
    if (!std::isfinite(y[i])) throw std::runtime_error("averaged model: non-finite state component " + std::to_string(i));
  if (!(y[0] > 0.0 && y[5] > y[0])) throw std::domain_error("averaged model: require 0 < a_inner < a_outer");
  table_.refresh(y[0] / y[5]);
  dydt = equations_of_motion(y, table_, params_);
}

}  // namespace orbtherm
