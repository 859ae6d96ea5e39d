#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbtherm/core_model.hpp"

namespace orbtherm {

enum class MapModel { Averaged, Direct };
enum class ColorScale { Linear, Log };

std::string to_string(MapModel m);
MapModel map_model_from_string(const std::string& s);
std::string to_string(ColorScale c);
ColorScale color_scale_from_string(const std::string& s);

struct MapSpec {
  MapModel model = MapModel::Averaged;
  double m5_lo_deg = 0.0;  // mean anomaly axis, [lo, hi)
  double m5_hi_deg = 360.0;
  double a5_lo = 127820.0;  // km, inclusive
  double a5_hi = 127870.0;
  int n_m = 100;
  int n_a = 100;
  double span_yr = 1500.0;
  double step_yr = 17.0 / 300.0;       // averaged model
  double direct_step_day = 1.0 / 80.0;  // direct model
  double inc5_deg = 4.338;

  void validate() const;
  double m5_at(int im) const;  // degrees
  double a5_at(int ia) const;  // km
};

// Bodies and J2000 elements; the inner mean anomaly, semi-major axis and inclination are overridden per cell.
struct MapBase {
  PlanetModel planet;
  BodyPhysical inner;
  BodyPhysical outer;
  OrbitalElements inner_elements;
  OrbitalElements outer_elements;
};

MapBase default_map_base();

struct MapResult {
  int n_m = 0;
  int n_a = 0;
  std::vector<double> m5_deg;
  std::vector<double> a5_km;
  std::vector<double> delta_a;  // row-major by a5: delta_a[ia * n_m + im]; NaN marks a failed cell

  double at(int ia, int im) const { return delta_a[static_cast<std::size_t>(ia) * n_m + im]; }
  std::size_t failed_cells() const;
};

// max(a5) - min(a5) over the span for one cell; throws on integration failure.
double map_cell(const MapSpec& spec, const MapBase& base, int ia, int im);

MapResult run_map(const MapSpec& spec, const MapBase& base, int workers = 1);

struct MapCenter {
  double a5 = 0.0;
  double m5_deg = 0.0;
  double delta_a = 0.0;
  int ia = 0;
  int im = 0;
};

// Libration centre: smallest delta_a among cells below the separatrix band (at least half the map
// maximum) with band cells both above and below them in a5.
MapCenter resonance_center(const MapResult& map);

// Mean semi-major axis of a near-circular orbit from its osculating value (first order in J2).
double mean_from_osculating_a(double a_osc, const PlanetModel& planet);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

// Monotone colour ramp: t in [0, 1] from light (small) to dark (large).
Rgb colormap(double t);
double luminance(const Rgb& c);

// Normalised intensity of every cell in [0, 1]; NaN for failed cells.
std::vector<double> normalise(const MapResult& map, ColorScale scale);

// Header lines (without trailing newline) are written as comments.
std::string map_to_csv(const MapResult& map, const std::vector<std::string>& header = {});
MapResult map_from_csv(const std::string& text);
// Binary PPM, one pixel per cell, a5 increasing upwards, M5 to the right.
std::string map_to_ppm(const MapResult& map, ColorScale scale, const std::vector<std::string>& header = {});

}  // namespace orbtherm
