#include "orbtherm/threebody.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbtherm {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 slice(const DirectVector& y, std::size_t off) { return {y[off], y[off + 1], y[off + 2]}; }

}  // namespace

DirectParams direct_params(const PlanetModel& planet, const BodyPhysical& inner, const BodyPhysical& outer) {
  const double c = constants::day * constants::day;
  return {planet.gm * c, inner.gm * c, outer.gm * c, planet.j2, planet.j4, planet.radius_ref};
}

Vec3 zonal_acceleration(const Vec3& r, const DirectParams& p) {
  const double r2 = dot(r, r);
  const double rr = std::sqrt(r2);
  const double s2 = r[2] * r[2] / r2;
  const double R2 = p.radius_ref * p.radius_ref;
  const double f2 = -1.5 * p.j2 * p.gm_planet * R2 / (r2 * r2 * rr);
  const double f4 = 0.625 * p.j4 * p.gm_planet * R2 * R2 / (r2 * r2 * r2 * rr);
  const double h2 = f2 * (1.0 - 5.0 * s2);
  const double h4 = f4 * (3.0 - 42.0 * s2 + 63.0 * s2 * s2);
  const double z2 = f2 * (3.0 - 5.0 * s2);
  const double z4 = f4 * (15.0 - 70.0 * s2 + 63.0 * s2 * s2);
  return {r[0] * (h2 + h4), r[1] * (h2 + h4), r[2] * (z2 + z4)};
}

double zonal_potential(const Vec3& r, const DirectParams& p) {
  const double rr = norm(r);
  const double s = r[2] / rr;
  const double s2 = s * s;
  const double q = p.radius_ref / rr;
  const double p2 = 0.5 * (3.0 * s2 - 1.0);
  const double p4 = (35.0 * s2 * s2 - 30.0 * s2 + 3.0) / 8.0;
  return p.gm_planet / rr * (p.j2 * q * q * p2 + p.j4 * q * q * q * q * p4);
}

std::array<Vec3, 2> direct_threebody_rhs(const DirectVector& y, const DirectParams& p) {
  const Vec3 r5 = slice(y, 0);
  const Vec3 r2 = slice(y, 6);
  const Vec3 d = {r2[0] - r5[0], r2[1] - r5[1], r2[2] - r5[2]};
  const double n5 = norm(r5);
  const double n2 = norm(r2);
  const double nd = norm(d);
  if (n5 == 0.0 || n2 == 0.0 || nd == 0.0) throw std::domain_error("direct_threebody_rhs: zero separation");
  const double k5 = (p.gm_planet + p.gm_inner) / (n5 * n5 * n5);
  const double k2 = (p.gm_planet + p.gm_outer) / (n2 * n2 * n2);
  const double kd = 1.0 / (nd * nd * nd);
  const Vec3 z5 = zonal_acceleration(r5, p);
  const Vec3 z2 = zonal_acceleration(r2, p);
  const double m5 = p.gm_inner / p.gm_planet;
  const double m2 = p.gm_outer / p.gm_planet;
  std::array<Vec3, 2> acc{};
  for (int c = 0; c < 3; ++c) {
    const double reflex = m5 * z5[c] + m2 * z2[c];
    acc[0][c] = -k5 * r5[c] + p.gm_outer * (d[c] * kd - r2[c] / (n2 * n2 * n2)) + z5[c] + reflex;
    acc[1][c] = -k2 * r2[c] + p.gm_inner * (-d[c] * kd - r5[c] / (n5 * n5 * n5)) + z2[c] + reflex;
  }
  return acc;
}

void DirectModel::operator()(const DirectVector& y, DirectVector& dydt, double /*t*/) const {
  const auto acc = direct_threebody_rhs(y, p_);
  for (int c = 0; c < 3; ++c) {
    dydt[c] = y[3 + c];
    dydt[3 + c] = acc[0][c];
    dydt[6 + c] = y[9 + c];
    dydt[9 + c] = acc[1][c];
  }
}

namespace {

struct Bary {
  Vec3 vp;  // planet velocity
  Vec3 v5;
  Vec3 v2;
  Vec3 rp;
  Vec3 r5;
  Vec3 r2;
};

// Barycentric positions and velocities from planetocentric ones (masses as gm).
Bary barycentric(const DirectVector& y, const DirectParams& p) {
  const double mt = p.gm_planet + p.gm_inner + p.gm_outer;
  Bary b;
  for (int c = 0; c < 3; ++c) {
    b.rp[c] = -(p.gm_inner * y[c] + p.gm_outer * y[6 + c]) / mt;
    b.vp[c] = -(p.gm_inner * y[3 + c] + p.gm_outer * y[9 + c]) / mt;
    b.r5[c] = y[c] + b.rp[c];
    b.r2[c] = y[6 + c] + b.rp[c];
    b.v5[c] = y[3 + c] + b.vp[c];
    b.v2[c] = y[9 + c] + b.vp[c];
  }
  return b;
}

}  // namespace

double direct_energy(const DirectVector& y, const DirectParams& p) {
  const Bary b = barycentric(y, p);
  const Vec3 r5 = slice(y, 0);
  const Vec3 r2 = slice(y, 6);
  const Vec3 d = {r2[0] - r5[0], r2[1] - r5[1], r2[2] - r5[2]};
  const double kin = 0.5 * (p.gm_planet * dot(b.vp, b.vp) + p.gm_inner * dot(b.v5, b.v5) + p.gm_outer * dot(b.v2, b.v2));
  const double pot = -p.gm_planet * p.gm_inner / norm(r5) - p.gm_planet * p.gm_outer / norm(r2) -
                     p.gm_inner * p.gm_outer / norm(d) + p.gm_inner * zonal_potential(r5, p) +
                     p.gm_outer * zonal_potential(r2, p);
  return kin + pot;
}

double direct_angular_momentum_z(const DirectVector& y, const DirectParams& p) {
  const Bary b = barycentric(y, p);
  return p.gm_planet * cross(b.rp, b.vp)[2] + p.gm_inner * cross(b.r5, b.v5)[2] + p.gm_outer * cross(b.r2, b.v2)[2];
}

double solve_kepler(double mean_anomaly, double e) {
  const double m = std::remainder(mean_anomaly, constants::two_pi);
  double E = e < 0.8 ? m : (m < 0 ? -constants::pi : constants::pi);
  for (int i = 0; i < 100; ++i) {
    const double f = E - e * std::sin(E) - m;
    const double dE = -f / (1.0 - e * std::cos(E));
    E += dE;
    if (std::abs(dE) < 1e-15) break;
  }
  return E;
}

CartesianState elements_to_cartesian(const OrbitalElements& el, double mu) {
  const double omega = el.peri - el.node;
  const double E = solve_kepler(el.mean_longitude - el.peri, el.e);
  const double b = std::sqrt(1.0 - el.e * el.e);
  const double xp = el.a * (std::cos(E) - el.e);
  const double yp = el.a * b * std::sin(E);
  const double n = std::sqrt(mu / (el.a * el.a * el.a));
  const double rdot = n * el.a / (1.0 - el.e * std::cos(E));
  const double vxp = -rdot * std::sin(E);
  const double vyp = rdot * b * std::cos(E);
  const double co = std::cos(omega), so = std::sin(omega);
  const double cO = std::cos(el.node), sO = std::sin(el.node);
  const double ci = std::cos(el.inc), si = std::sin(el.inc);
  const double p11 = cO * co - sO * so * ci, p12 = -cO * so - sO * co * ci;
  const double p21 = sO * co + cO * so * ci, p22 = -sO * so + cO * co * ci;
  const double p31 = so * si, p32 = co * si;
  CartesianState s;
  s.r = {p11 * xp + p12 * yp, p21 * xp + p22 * yp, p31 * xp + p32 * yp};
  s.v = {p11 * vxp + p12 * vyp, p21 * vxp + p22 * vyp, p31 * vxp + p32 * vyp};
  return s;
}

OrbitalElements cartesian_to_elements(const CartesianState& s, double mu) {
  const Vec3 h = cross(s.r, s.v);
  const double r = norm(s.r);
  const double hn = norm(h);
  OrbitalElements el;
  el.a = osculating_a(s.r, s.v, mu);
  const Vec3 vxh = cross(s.v, h);
  const Vec3 ev = {vxh[0] / mu - s.r[0] / r, vxh[1] / mu - s.r[1] / r, vxh[2] / mu - s.r[2] / r};
  el.e = norm(ev);
  el.inc = std::acos(std::clamp(h[2] / hn, -1.0, 1.0));
  el.node = wrap_angle(std::atan2(h[0], -h[1]));
  // Eccentricity vector rotated into the node frame gives the longitude of pericenter.
  const double cO = std::cos(el.node), sO = std::sin(el.node), ci = std::cos(el.inc);
  auto plane_angle = [&](const Vec3& v) {
    const double x = cO * v[0] + sO * v[1];
    const double y = (-sO * v[0] + cO * v[1]) * ci + v[2] * std::sin(el.inc);
    return std::atan2(y, x);
  };
  const double true_lon = plane_angle(s.r);
  el.peri = wrap_angle(el.node + plane_angle(ev));
  const double f = true_lon - (el.peri - el.node);
  const double E = 2.0 * std::atan2(std::sqrt(1.0 - el.e) * std::sin(f / 2.0), std::sqrt(1.0 + el.e) * std::cos(f / 2.0));
  el.mean_longitude = wrap_angle(E - el.e * std::sin(E) + el.peri);
  return el;
}

double osculating_a(const Vec3& r, const Vec3& v, double mu) {
  return 1.0 / (2.0 / norm(r) - dot(v, v) / mu);
}

DirectVector make_direct_state(const OrbitalElements& inner, const OrbitalElements& outer, const DirectParams& p) {
  const auto s5 = elements_to_cartesian(inner, p.gm_planet + p.gm_inner);
  const auto s2 = elements_to_cartesian(outer, p.gm_planet + p.gm_outer);
  return {s5.r[0], s5.r[1], s5.r[2], s5.v[0], s5.v[1], s5.v[2],
          s2.r[0], s2.r[1], s2.r[2], s2.v[0], s2.v[1], s2.v[2]};
}

}  // namespace orbtherm
