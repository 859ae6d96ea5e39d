#include "orbtherm/cartography.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "orbtherm/abm10.hpp"
#include "orbtherm/averaged_dynamics.hpp"
#include "orbtherm/output.hpp"
#include "orbtherm/threebody.hpp"

namespace orbtherm {

using constants::deg;

std::string to_string(MapModel m) { return m == MapModel::Averaged ? "averaged" : "direct"; }

MapModel map_model_from_string(const std::string& s) {
  if (s == "averaged") return MapModel::Averaged;
  if (s == "direct") return MapModel::Direct;
  throw std::invalid_argument("unknown map model '" + s + "' (expected averaged or direct)");
}

std::string to_string(ColorScale c) { return c == ColorScale::Linear ? "linear" : "log"; }

ColorScale color_scale_from_string(const std::string& s) {
  if (s == "linear") return ColorScale::Linear;
  if (s == "log") return ColorScale::Log;
  throw std::invalid_argument("unknown color scale '" + s + "' (expected linear or log)");
}

void MapSpec::validate() const {
  if (n_m < 2 || n_a < 2) throw std::domain_error("map grid counts must be at least 2");
  if (!(span_yr > 0.0)) throw std::domain_error("map span must be positive");
  if (!(step_yr > 0.0) || !(direct_step_day > 0.0)) throw std::domain_error("map step must be positive");
  if (!(a5_hi > a5_lo) || !(a5_lo > 0.0)) throw std::domain_error("map a5 range must be increasing and positive");
  if (!(m5_hi_deg > m5_lo_deg)) throw std::domain_error("map M5 range must be increasing");
}

double MapSpec::m5_at(int im) const { return m5_lo_deg + (m5_hi_deg - m5_lo_deg) * im / n_m; }

double MapSpec::a5_at(int ia) const { return a5_lo + (a5_hi - a5_lo) * ia / (n_a - 1); }

MapBase default_map_base() { return {uranus(), miranda(), umbriel(), miranda_j2000(), umbriel_j2000()}; }

std::size_t MapResult::failed_cells() const {
  return static_cast<std::size_t>(std::count_if(delta_a.begin(), delta_a.end(), [](double v) { return std::isnan(v); }));
}

namespace {

OrbitalElements cell_elements(const MapSpec& spec, const MapBase& base, int ia, int im) {
  OrbitalElements el = base.inner_elements;
  el.a = spec.a5_at(ia);
  el.inc = spec.inc5_deg * deg;
  el.mean_longitude = wrap_angle(spec.m5_at(im) * deg + el.peri);
  return el;
}

double averaged_cell(const MapSpec& spec, const MapBase& base, const OrbitalElements& el5) {
  AveragedModel model(averaged_params(base.planet, base.inner, base.outer));
  const auto y0 = initial_vector(el5, base.outer_elements);
  Abm10<averaged_dim> abm(spec.step_yr);
  abm.initialize(model, y0, 0.0);
  const long long n = std::llround(spec.span_yr / spec.step_yr);
  // The start-up steps are part of the trajectory; include the start value as well.
  double lo = y0[0], hi = y0[0];
  lo = std::min(lo, abm.state()[0]);
  hi = std::max(hi, abm.state()[0]);
  for (long long i = abm.steps(); i < n; ++i) {
    abm.step(model);
    lo = std::min(lo, abm.state()[0]);
    hi = std::max(hi, abm.state()[0]);
  }
  return hi - lo;
}

double direct_cell(const MapSpec& spec, const MapBase& base, const OrbitalElements& el5) {
  const auto p = direct_params(base.planet, base.inner, base.outer);
  const DirectModel model(p);
  const auto y0 = make_direct_state(el5, base.outer_elements, p);
  const double mu = p.gm_planet + p.gm_inner;
  auto a_of = [&](const DirectVector& y) { return osculating_a({y[0], y[1], y[2]}, {y[3], y[4], y[5]}, mu); };
  Abm10<direct_dim> abm(spec.direct_step_day);
  abm.initialize(model, y0, 0.0);
  const long long n = std::llround(spec.span_yr * 365.25 / spec.direct_step_day);
  double lo = a_of(y0), hi = lo;
  const double a1 = a_of(abm.state());
  lo = std::min(lo, a1);
  hi = std::max(hi, a1);
  for (long long i = abm.steps(); i < n; ++i) {
    abm.step(model);
    const double a = a_of(abm.state());
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi - lo;
}

}  // namespace

double map_cell(const MapSpec& spec, const MapBase& base, int ia, int im) {
  const auto el5 = cell_elements(spec, base, ia, im);
  const double v = spec.model == MapModel::Averaged ? averaged_cell(spec, base, el5) : direct_cell(spec, base, el5);
  if (!std::isfinite(v)) throw std::runtime_error("map cell produced a non-finite variation");
  return v;
}

MapResult run_map(const MapSpec& spec, const MapBase& base, int workers) {
  spec.validate();
  MapResult r;
  r.n_m = spec.n_m;
  r.n_a = spec.n_a;
  for (int im = 0; im < spec.n_m; ++im) r.m5_deg.push_back(spec.m5_at(im));
  for (int ia = 0; ia < spec.n_a; ++ia) r.a5_km.push_back(spec.a5_at(ia));
  const std::size_t cells = static_cast<std::size_t>(spec.n_m) * spec.n_a;
  r.delta_a.assign(cells, std::numeric_limits<double>::quiet_NaN());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next.fetch_add(1); c < cells; c = next.fetch_add(1)) {
      const int ia = static_cast<int>(c / static_cast<std::size_t>(spec.n_m));
      const int im = static_cast<int>(c % static_cast<std::size_t>(spec.n_m));
      try {
        r.delta_a[c] = map_cell(spec, base, ia, im);
      } catch (const std::exception&) {
        // Sentinel stays NaN.
      }
    }
  };
  const int n_workers = std::clamp(workers, 1, static_cast<int>(std::min<std::size_t>(cells, 1024)));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  return r;
}

MapCenter resonance_center(const MapResult& map) {
  double peak = 0.0;
  for (double v : map.delta_a)
    if (std::isfinite(v)) peak = std::max(peak, v);
  const double band = 0.5 * peak;
  MapCenter best;
  best.delta_a = std::numeric_limits<double>::infinity();
  for (int im = 0; im < map.n_m; ++im) {
    for (int ia = 1; ia + 1 < map.n_a; ++ia) {
      const double v = map.at(ia, im);
      if (!std::isfinite(v) || v >= band || v >= best.delta_a) continue;
      bool below = false, above = false;
      for (int k = 0; k < ia && !below; ++k) below = map.at(k, im) >= band;
      for (int k = ia + 1; k < map.n_a && !above; ++k) above = map.at(k, im) >= band;
      if (below && above) best = {map.a5_km[static_cast<std::size_t>(ia)], map.m5_deg[static_cast<std::size_t>(im)], v, ia, im};
    }
  }
  if (!std::isfinite(best.delta_a)) throw std::runtime_error("resonance_center: no cell enclosed by the separatrix band");
  return best;
}

double mean_from_osculating_a(double a_osc, const PlanetModel& planet) {
  return a_osc - 1.5 * planet.j2 * planet.radius_ref * planet.radius_ref / a_osc;
}

Rgb colormap(double t) {
  // Every channel is non-increasing along the ramp, so luminance is monotone after rounding.
  struct Anchor {
    double t, r, g, b;
  };
  static constexpr Anchor anchors[] = {{0.0, 255, 255, 255}, {0.5, 230, 140, 40}, {1.0, 40, 0, 30}};
  t = std::clamp(t, 0.0, 1.0);
  const Anchor& a = t <= 0.5 ? anchors[0] : anchors[1];
  const Anchor& b = t <= 0.5 ? anchors[1] : anchors[2];
  const double u = (t - a.t) / (b.t - a.t);
  auto mix = [u](double x, double y) { return static_cast<std::uint8_t>(std::lround(x + (y - x) * u)); };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

double luminance(const Rgb& c) { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

std::vector<double> normalise(const MapResult& map, ColorScale scale) {
  auto tr = [scale](double v) { return scale == ColorScale::Log ? std::log10(std::max(v, 1e-12)) : v; };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : map.delta_a)
    if (std::isfinite(v)) {
      lo = std::min(lo, tr(v));
      hi = std::max(hi, tr(v));
    }
  std::vector<double> out(map.delta_a.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = map.delta_a[i];
    if (!std::isfinite(v)) continue;
    out[i] = hi > lo ? (tr(v) - lo) / (hi - lo) : 0.0;
  }
  return out;
}

std::string map_to_csv(const MapResult& map, const std::vector<std::string>& header) {
  std::vector<std::vector<double>> rows;
  rows.reserve(map.delta_a.size());
  for (int ia = 0; ia < map.n_a; ++ia)
    for (int im = 0; im < map.n_m; ++im)
      rows.push_back({map.a5_km[static_cast<std::size_t>(ia)], map.m5_deg[static_cast<std::size_t>(im)], map.at(ia, im)});
  auto comments = header;
  comments.push_back("grid " + std::to_string(map.n_a) + " x " + std::to_string(map.n_m));
  return csv_table(comments, {"a5_km", "m5_deg", "delta_a_km"}, rows);
}

MapResult map_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MapResult r;
  bool header_seen = false;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# grid ", 0) == 0) {
        std::istringstream g(line.substr(7));
        std::string x;
        g >> r.n_a >> x >> r.n_m;
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::array<double, 3> v{};
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("map csv: short row '" + line + "'");
      v[static_cast<std::size_t>(k)] = std::stod(cell);
    }
    rows.push_back(v);
  }
  if (r.n_a < 1 || r.n_m < 1 || rows.size() != static_cast<std::size_t>(r.n_a) * r.n_m)
    throw std::runtime_error("map csv: grid size does not match row count");
  for (int im = 0; im < r.n_m; ++im) r.m5_deg.push_back(rows[static_cast<std::size_t>(im)][1]);
  for (int ia = 0; ia < r.n_a; ++ia) r.a5_km.push_back(rows[static_cast<std::size_t>(ia) * r.n_m][0]);
  for (const auto& v : rows) r.delta_a.push_back(v[2]);
  return r;
}

std::string map_to_ppm(const MapResult& map, ColorScale scale, const std::vector<std::string>& header) {
  const auto t = normalise(map, scale);
  std::string out = "P6\n";
  for (const auto& h : header) out += "# " + h + "\n";
  out += "# color-scale " + to_string(scale) + "\n";
  out += std::to_string(map.n_m) + " " + std::to_string(map.n_a) + "\n255\n";
  for (int row = 0; row < map.n_a; ++row) {
    const int ia = map.n_a - 1 - row;
    for (int im = 0; im < map.n_m; ++im) {
      const double v = t[static_cast<std::size_t>(ia) * map.n_m + im];
      // Failed cells are drawn in pure green, outside the ramp.
      const Rgb c = std::isnan(v) ? Rgb{0, 255, 0} : colormap(v);
      out += static_cast<char>(c.r);
      out += static_cast<char>(c.g);
      out += static_cast<char>(c.b);
    }
  }
  return out;
}

}  // namespace orbtherm
