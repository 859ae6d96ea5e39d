#include "orbtherm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbtherm {

using constants::pi;
using constants::year;

ComponentProps ice_props() { return {917.0, 888.7, 5.4, 4.5e9}; }
ComponentProps silicate_props() { return {2500.0, 920.0, 4.2, 65.0e9}; }

MixtureProps mixture_properties(double x_s, double f_s, double rho_body, const ComponentProps& ice,
                                const ComponentProps& silicate) {
  if (!(x_s >= 0.0 && x_s <= 1.0 && f_s >= 0.0 && f_s <= 1.0))
    throw std::domain_error("mixture_properties: fractions must lie in [0, 1]");
  MixtureProps m;
  m.x_s = x_s;
  m.f_s = f_s;
  m.rho = rho_body;
  m.cp = x_s * silicate.cp + (1.0 - x_s) * ice.cp;
  m.k_cond = f_s * silicate.k + (1.0 - f_s) * ice.k;
  return m;
}

std::pair<double, double> silicate_fractions(double rho_body, const ComponentProps& ice,
                                             const ComponentProps& silicate) {
  const double f_s = (rho_body - ice.rho) / (silicate.rho - ice.rho);
  if (!(f_s >= 0.0 && f_s <= 1.0)) throw std::domain_error("silicate_fractions: density outside ice/rock range");
  return {f_s * silicate.rho / rho_body, f_s};
}

MixtureProps miranda_table_mixture() {
  MixtureProps m;
  m.x_s = 0.37;
  m.f_s = 0.45;
  m.rho = 1200.0;
  m.cp = 900.0;
  m.k_cond = 5.2;
  return m;
}

double Isotope::decay_lambda() const { return std::log(2.0) / (half_life_yr * year); }

namespace {

struct IsotopeSeed {
  const char* name;
  double heat_rate;
  double half_life_yr;
  double isotopic_fraction;
  bool short_lived;
  double element_concentration;  // kg/kg of silicate
};

// Element abundances: CI chondrite (U, Th, K) and bulk chondrite (Al, Fe, Mn).
constexpr IsotopeSeed seeds[] = {
    {"U238", 9.46e-5, 4.47e9, 0.99275, false, 8.1e-9},
    {"U235", 5.69e-4, 7.04e8, 0.00720, false, 8.1e-9},
    {"Th232", 2.64e-5, 1.41e10, 1.0, false, 29.8e-9},
    {"K40", 2.92e-5, 1.28e9, 1.17e-4, false, 544e-6},
    {"Al26", 4.55e-1, 7.17e5, 5.8e-5, true, 8.65e-3},
    {"Fe60", 7.19e-2, 1.50e6, 7e-7, true, 18.2e-2},
    {"Mn53", 6.38e-3, 3.74e6, 9e-6, true, 1940e-6},
};

bool in_set(const Isotope& iso, IsotopeSet set) {
  return set == IsotopeSet::All || (set == IsotopeSet::ShortLived) == iso.short_lived;
}

// Decay factor between the isotope's reference epoch and t.
double decay_factor(const Isotope& iso, double t_yr, double present_yr) {
  const double dt = iso.short_lived ? t_yr : t_yr - present_yr;
  return std::exp(-iso.decay_lambda() * dt * year);
}

}  // namespace

RadiogenicInventory calibrated_inventory(const RadiogenicCalibration& cal) {
  RadiogenicInventory inv;
  double raw_long = 0.0;
  double raw_short = 0.0;
  for (const auto& s : seeds) {
    Isotope iso{s.name, s.heat_rate, s.half_life_yr, s.isotopic_fraction, s.short_lived,
                s.element_concentration * s.isotopic_fraction};
    (iso.short_lived ? raw_short : raw_long) += iso.heat_rate * iso.concentration;
    inv.isotopes.push_back(iso);
  }
  for (auto& iso : inv.isotopes)
    iso.concentration *= iso.short_lived ? cal.initial_short_lived / raw_short : cal.present_long_lived / raw_long;
  return inv;
}

double radiogenic_power(double t_yr, const RadiogenicInventory& inv, IsotopeSet set) {
  if (!(t_yr >= 0.0)) throw std::domain_error("radiogenic_power: time must be non-negative");
  double p = 0.0;
  for (const auto& iso : inv.isotopes)
    if (in_set(iso, set)) p += iso.heat_rate * iso.concentration * decay_factor(iso, t_yr, inv.present_epoch_yr);
  return p;
}

double radiogenic_mean_power(double t0_yr, double t1_yr, const RadiogenicInventory& inv, IsotopeSet set) {
  double p = 0.0;
  for (const auto& iso : inv.isotopes) {
    if (!in_set(iso, set)) continue;
    const double x = iso.decay_lambda() * (t1_yr - t0_yr) * year;
    const double f0 = decay_factor(iso, t0_yr, inv.present_epoch_yr);
    const double mean = x > 1e-8 ? f0 * (-std::expm1(-x)) / x : f0 * (1.0 - 0.5 * x);
    p += iso.heat_rate * iso.concentration * mean;
  }
  return p;
}

ThermalGrid make_uniform_grid(double radius_m, int n_points, const MixtureProps& props, double t_surf, double t_init) {
  if (n_points < 3) throw std::invalid_argument("thermal grid needs at least 3 points");
  if (!(radius_m > 0.0)) throw std::domain_error("thermal grid radius must be positive");
  ThermalGrid g;
  g.n_points = n_points;
  g.radius = radius_m;
  g.props = props;
  g.t_surf = t_surf;
  g.radii.resize(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) g.radii[static_cast<std::size_t>(i)] = radius_m * i / (n_points - 1);
  g.temps.assign(static_cast<std::size_t>(n_points), t_init);
  g.temps.back() = t_surf;
  return g;
}

std::vector<double> shell_volumes(const ThermalGrid& grid) {
  const int n = grid.n_points;
  const double dr = grid.dr();
  std::vector<double> v(static_cast<std::size_t>(n));
  auto ball = [](double r) { return 4.0 / 3.0 * pi * r * r * r; };
  for (int i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : (i - 0.5) * dr;
    const double hi = i == n - 1 ? grid.radius : (i + 0.5) * dr;
    v[static_cast<std::size_t>(i)] = ball(hi) - ball(lo);
  }
  return v;
}

double mean_temperature(const ThermalGrid& grid) {
  const auto v = shell_volumes(grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += grid.temps[i] * v[i];
    den += v[i];
  }
  return num / den;
}

double interior_heat_content(const ThermalGrid& grid) {
  const auto v = shell_volumes(grid);
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) e += grid.temps[i] * v[i];
  return grid.props.rho * grid.props.cp * e;
}

double surface_heat_loss(const ThermalGrid& grid) {
  const int n = grid.n_points;
  const double dr = grid.dr();
  const double r = (n - 1.5) * dr;
  const auto last = static_cast<std::size_t>(n - 1);
  return grid.props.k_cond * 4.0 * pi * r * r * (grid.temps[last - 1] - grid.temps[last]) / dr;
}

namespace {

void solve_step(ThermalGrid& grid, double dt, const double* source, double uniform) {
  if (!(dt > 0.0)) throw std::domain_error("step_conduction: dt must be positive");
  const int n = grid.n_points;
  const double dr = grid.dr();
  const double rc = grid.props.rho * grid.props.cp;
  const double k = grid.props.k_cond;
  const auto vol = shell_volumes(grid);
  const int m = n - 1;  // unknowns 0..n-2; node n-1 is Dirichlet
  std::vector<double> lower(static_cast<std::size_t>(m)), diag(static_cast<std::size_t>(m)),
      upper(static_cast<std::size_t>(m)), rhs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double cap = rc * vol[u] / dt;
    const double r_out = (i + 0.5) * dr;
    const double g_out = k * 4.0 * pi * r_out * r_out / dr;
    const double r_in = (i - 0.5) * dr;
    const double g_in = i == 0 ? 0.0 : k * 4.0 * pi * r_in * r_in / dr;
    const double h = source ? source[u] : uniform;
    lower[u] = -g_in;
    upper[u] = -g_out;
    diag[u] = cap + g_in + g_out;
    rhs[u] = cap * grid.temps[u] + h * vol[u];
  }
  rhs[static_cast<std::size_t>(m - 1)] -= upper[static_cast<std::size_t>(m - 1)] * grid.t_surf;
  // Thomas algorithm; the system is diagonally dominant.
  for (int i = 1; i < m; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double w = lower[u] / diag[u - 1];
    diag[u] -= w * upper[u - 1];
    rhs[u] -= w * rhs[u - 1];
    if (diag[u] == 0.0) throw std::runtime_error("step_conduction: singular tridiagonal system");
  }
  auto& t = grid.temps;
  t[static_cast<std::size_t>(m - 1)] = rhs[static_cast<std::size_t>(m - 1)] / diag[static_cast<std::size_t>(m - 1)];
  for (int i = m - 2; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    t[u] = (rhs[u] - upper[u] * t[u + 1]) / diag[u];
  }
  t.back() = grid.t_surf;
}

}  // namespace

ThermalGrid step_conduction(ThermalGrid grid, double dt, std::span<const double> source) {
  if (source.size() != grid.temps.size()) throw std::invalid_argument("step_conduction: source size mismatch");
  for (double s : source)
    if (!std::isfinite(s)) throw std::domain_error("step_conduction: non-finite source");
  solve_step(grid, dt, source.data(), 0.0);
  return grid;
}

void advance_uniform(ThermalGrid& grid, double dt, double source) {
  if (!std::isfinite(source)) throw std::domain_error("advance_uniform: non-finite source");
  solve_step(grid, dt, nullptr, source);
}

ThermalGrid radiogenic_profile(double radius_m, const MixtureProps& props, double t_surf, const RadiogenicInventory& inv,
                               IsotopeSet set, const ProfileSettings& settings) {
  ThermalGrid g = make_uniform_grid(radius_m, settings.n_points, props, t_surf, t_surf);
  const double to_volumetric = props.rho * props.x_s;
  // Fine steps while short-lived isotopes decay, coarsening to 1 Myr.
  double t = 0.0;
  double dt = 1.0e3;
  while (t < settings.duration_yr) {
    const double step = std::min(dt, settings.duration_yr - t);
    const double h = to_volumetric * radiogenic_mean_power(t, t + step, inv, set);
    advance_uniform(g, step * year, h);
    t += step;
    dt = std::min(dt * 1.02, 1.0e6);
  }
  return g;
}

InitialProfiles initial_profiles(double radius_m, const MixtureProps& props, double t_surf,
                                 const RadiogenicInventory& inv, const ProfileSettings& settings) {
  return {radiogenic_profile(radius_m, props, t_surf, inv, IsotopeSet::All, settings),
          radiogenic_profile(radius_m, props, t_surf, inv, IsotopeSet::LongLived, settings)};
}

double conduction_timescale(double radius_m, const MixtureProps& props) {
  return radius_m * radius_m / props.alpha_diff();
}

}  // namespace orbtherm
