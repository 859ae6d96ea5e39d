#include "orbtherm/config.hpp"

#include <cmath>

#include "orbtherm/output.hpp"

namespace orbtherm {

using nlohmann::json;
using constants::deg;

namespace {

constexpr const char* default_text = R"({
  "planet": {"gm": 5793964.0, "j2": 0.00334129, "j4": -3.044e-05, "radius_ref": 26200.0, "k2_over_q": 5.2e-05},
  "inner": {
    "name": "miranda",
    "gm": 4.4, "mean_radius": 235.8, "r_a": 240.4, "r_b": 234.2, "r_c": 232.9, "density": 1200.0,
    "elements": {"a": 129900.0, "e": 0.0013, "inc_deg": 4.338, "peri_deg": 68.312, "node_deg": 326.438,
                 "mean_anomaly_deg": 311.33},
    "thermal": {"x_s": 0.37, "f_s": 0.45, "cp": 900.0, "k_cond": 5.2, "t_surf": 84.0, "t_uniform": 84.0,
                "n_points": 200},
    "rheology": {"model": "maxwell", "mu_elastic": 27e9, "eta_ref": 1e15, "t_melt": 273.0, "e_activation": 50000.0,
                 "gas_const": 8.31, "burgers_mu_ratio": 1.0, "burgers_eta_ratio": 17.0, "andrade_alpha": 0.33,
                 "andrade_beta": null},
    "k2_over_q_override": null
  },
  "outer": {
    "name": "umbriel",
    "gm": 81.5, "mean_radius": 584.7, "r_a": 584.7, "r_b": 584.7, "r_c": 584.7, "density": null,
    "elements": {"a": 266000.0, "e": 0.0039, "inc_deg": 0.128, "peri_deg": 84.709, "node_deg": 33.485,
                 "mean_anomaly_deg": 12.469},
    "thermal": {"x_s": null, "f_s": null, "cp": null, "k_cond": null, "t_surf": 84.0, "t_uniform": 84.0,
                "n_points": 200},
    "rheology": {"model": "maxwell", "mu_elastic": 27e9, "eta_ref": 1e15, "t_melt": 273.0, "e_activation": 50000.0,
                 "gas_const": 8.31, "burgers_mu_ratio": 1.0, "burgers_eta_ratio": 17.0, "andrade_alpha": 0.33,
                 "andrade_beta": null},
    "k2_over_q_override": null
  },
  "radiogenic": {"present_long_lived": 7e-12, "initial_short_lived": 2e-07},
  "scenario": {
    "duration_yr": 6e6, "dynamic_step_yr": 0.056666666666666664, "macro_step_yr": 100.0, "output_every": 10,
    "resonance": 6, "auto_place": true, "placement_offset_km": 2.0,
    "e_inner": 0.0005, "e_outer": 0.0005, "inc_inner_deg": 4.5,
    "initial_profile": "warm", "start_epoch_yr": 4.56e9, "profile_duration_yr": 4.6e9,
    "radiogenic": true, "tides": true, "libration_window_yr": 5000.0,
    "checkpoint_path": "", "checkpoint_every": 0
  },
  "map": {
    "model": "averaged", "m5_lo_deg": 0.0, "m5_hi_deg": 360.0, "a5_lo": null, "a5_hi": null, "n_m": 100, "n_a": 100,
    "span_yr": 1500.0, "step_yr": 0.056666666666666664, "direct_step_day": 0.0125, "inc5_deg": 4.338,
    "color_scale": "linear"
  },
  "estimate": {"e_lo": 0.0, "e_hi": 0.1, "n_e": 51, "q_lo": 1.0, "q_hi": 1000.0, "n_q": 31, "q_log": true, "k2": null},
  "rheology_curves": {"tm_lo": 150.0, "tm_hi": 273.0, "count": 124, "temperature": null, "burgers_eta_ratio": 17.0,
                      "andrade_beta": null}
})";

constexpr const char* preset_text = R"({
  "nominal": {},
  "extremal-burgers": {
    "inner": {"rheology": {"model": "burgers", "t_melt": 200.0, "burgers_eta_ratio": 50.0}},
    "scenario": {"e_inner": 0.5, "duration_yr": 1e6, "placement_offset_km": 0.0}
  },
  "extremal-andrade": {
    "inner": {"rheology": {"model": "andrade", "t_melt": 200.0, "andrade_alpha": 0.33, "andrade_beta": 1e-13}},
    "scenario": {"e_inner": 0.5, "duration_yr": 1e6, "placement_offset_km": 0.0}
  }
})";

std::string kind_of(const json& j) {
  if (j.is_number()) return "a number";
  if (j.is_boolean()) return "a boolean";
  if (j.is_string()) return "a string";
  if (j.is_object()) return "an object";
  if (j.is_array()) return "an array";
  return "null";
}

// Typed accessors; every failure names the dotted key.
class Reader {
 public:
  Reader(const json& root) : root_(root) {}

  const json& node(const std::string& path) const {
    const json* cur = &root_;
    std::size_t start = 0;
    while (start <= path.size()) {
      const auto dot = path.find('.', start);
      const auto key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!cur->is_object() || !cur->contains(key)) throw ConfigError("missing configuration key '" + path + "'");
      cur = &(*cur)[key];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return *cur;
  }

  double num(const std::string& path) const {
    const auto& j = node(path);
    if (!j.is_number()) throw ConfigError("configuration key '" + path + "' expects a number, got " + kind_of(j));
    return j.get<double>();
  }
  std::optional<double> opt_num(const std::string& path) const {
    const auto& j = node(path);
    if (j.is_null()) return std::nullopt;
    return num(path);
  }
  double positive(const std::string& path) const {
    const double v = num(path);
    if (!(v > 0.0)) throw ConfigError("configuration key '" + path + "' must be positive");
    return v;
  }
  int integer(const std::string& path, int min_value) const {
    const auto& j = node(path);
    if (!j.is_number_integer() && !(j.is_number() && std::floor(j.get<double>()) == j.get<double>()))
      throw ConfigError("configuration key '" + path + "' expects an integer");
    const double v = j.get<double>();
    if (v < min_value || v > 1e9)
      throw ConfigError("configuration key '" + path + "' must be at least " + std::to_string(min_value));
    return static_cast<int>(v);
  }
  bool boolean(const std::string& path) const {
    const auto& j = node(path);
    if (!j.is_boolean()) throw ConfigError("configuration key '" + path + "' expects a boolean, got " + kind_of(j));
    return j.get<bool>();
  }
  std::string str(const std::string& path) const {
    const auto& j = node(path);
    if (!j.is_string()) throw ConfigError("configuration key '" + path + "' expects a string, got " + kind_of(j));
    return j.get<std::string>();
  }

  template <class F>
  auto checked(const std::string& path, F&& f) const {
    try {
      return f();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("configuration key '" + path + "': " + e.what());
    }
  }

 private:
  const json& root_;
};

SatelliteConfig read_satellite(const Reader& r, const std::string& key) {
  SatelliteConfig s;
  s.name = r.str(key + ".name");
  s.body.gm = r.positive(key + ".gm");
  s.body.mean_radius = r.positive(key + ".mean_radius");
  s.body.r_a = r.positive(key + ".r_a");
  s.body.r_b = r.positive(key + ".r_b");
  s.body.r_c = r.positive(key + ".r_c");
  if (auto d = r.opt_num(key + ".density")) {
    s.body.density = *d;
  } else {
    const double rm = s.body.mean_radius * 1e3;
    s.body.density = s.body.mass() / (4.0 / 3.0 * constants::pi * rm * rm * rm);
  }
  r.checked(key, [&] {
    s.body.validate();
    return 0;
  });

  const std::string el = key + ".elements";
  s.elements.a = r.positive(el + ".a");
  s.elements.e = r.num(el + ".e");
  s.elements.inc = r.num(el + ".inc_deg") * deg;
  s.elements.peri = r.num(el + ".peri_deg") * deg;
  s.elements.node = r.num(el + ".node_deg") * deg;
  s.elements.mean_longitude = wrap_angle(r.num(el + ".mean_anomaly_deg") * deg + s.elements.peri);
  r.checked(el, [&] {
    s.elements.validate();
    return 0;
  });

  const std::string th = key + ".thermal";
  r.checked(th, [&] {
    auto x_s = r.opt_num(th + ".x_s");
    auto f_s = r.opt_num(th + ".f_s");
    if (!x_s || !f_s) {
      const auto fr = silicate_fractions(s.body.density);
      if (!x_s) x_s = fr.first;
      if (!f_s) f_s = fr.second;
    }
    s.mixture = mixture_properties(*x_s, *f_s, s.body.density);
    if (auto cp = r.opt_num(th + ".cp")) s.mixture.cp = *cp;
    if (auto k = r.opt_num(th + ".k_cond")) s.mixture.k_cond = *k;
    if (!(s.mixture.cp > 0.0 && s.mixture.k_cond > 0.0)) throw std::domain_error("cp and k_cond must be positive");
    return 0;
  });
  s.t_surf = r.positive(th + ".t_surf");
  s.t_uniform = r.positive(th + ".t_uniform");
  s.n_points = r.integer(th + ".n_points", 3);

  const std::string rh = key + ".rheology";
  s.rheology.model = r.checked(rh + ".model", [&] { return rheology_model_from_string(r.str(rh + ".model")); });
  s.rheology.mu_elastic = r.positive(rh + ".mu_elastic");
  s.rheology.eta_ref = r.positive(rh + ".eta_ref");
  s.rheology.t_melt = r.positive(rh + ".t_melt");
  s.rheology.e_activation = r.num(rh + ".e_activation");
  s.rheology.gas_const = r.positive(rh + ".gas_const");
  s.rheology.burgers_mu_ratio = r.positive(rh + ".burgers_mu_ratio");
  s.rheology.burgers_eta_ratio = r.positive(rh + ".burgers_eta_ratio");
  s.rheology.andrade_alpha = r.num(rh + ".andrade_alpha");
  s.rheology.andrade_beta = r.opt_num(rh + ".andrade_beta");
  r.checked(rh, [&] {
    s.rheology.validate();
    return 0;
  });
  s.k2q_override = r.opt_num(key + ".k2_over_q_override");
  if (s.k2q_override && *s.k2q_override < 0.0)
    throw ConfigError("configuration key '" + key + ".k2_over_q_override' must be non-negative");
  return s;
}

}  // namespace

const json& default_config() {
  static const json j = json::parse(default_text);
  return j;
}

const json& presets() {
  static const json j = json::parse(preset_text);
  return j;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : presets().items()) names.push_back(k);
  return names;
}

const json& preset_patch(const std::string& name) {
  if (!presets().contains(name)) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (expected one of " + known + ")");
  }
  return presets()[name];
}

void merge_config(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw ConfigError("configuration " + (path.empty() ? "root" : "key '" + path + "'") + " must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown configuration key '" + full + "'");
    json& target = base[key];
    if (target.is_object()) {
      merge_config(target, value, full);
      continue;
    }
    std::string pointer = "/" + full;
    for (auto& c : pointer)
      if (c == '.') c = '/';
    const json::json_pointer ptr(pointer);
    // Keys that default to null stay nullable after earlier overlays.
    const bool nullable = target.is_null() || (default_config().contains(ptr) && default_config()[ptr].is_null());
    const bool ok = (nullable && (value.is_null() || value.is_number() || value.is_string())) ||
                    (target.is_number() && value.is_number()) || (target.is_boolean() && value.is_boolean()) ||
                    (target.is_string() && value.is_string());
    if (!ok) {
      const std::string expected = nullable ? "a number or null" : kind_of(target);
      throw ConfigError("configuration key '" + full + "' expects " + expected + ", got " + kind_of(value));
    }
    target = value;
  }
}

json parse_config_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text, nullptr, true, false);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

RunConfig build_config(const json& user, const std::string& preset) {
  RunConfig rc;
  rc.merged = default_config();
  merge_config(rc.merged, preset_patch(preset));
  if (!user.is_null()) merge_config(rc.merged, user);
  rc.digest = sha256_hex(rc.merged.dump());
  const Reader r(rc.merged);

  auto& sc = rc.scenario;
  sc.planet.gm = r.positive("planet.gm");
  sc.planet.j2 = r.num("planet.j2");
  sc.planet.j4 = r.num("planet.j4");
  sc.planet.radius_ref = r.positive("planet.radius_ref");
  sc.planet.k2_over_q = r.num("planet.k2_over_q");
  r.checked("planet", [&] {
    sc.planet.validate();
    return 0;
  });
  sc.inner = read_satellite(r, "inner");
  sc.outer = read_satellite(r, "outer");
  rc.map_base = {sc.planet, sc.inner.body, sc.outer.body, sc.inner.elements, sc.outer.elements};

  sc.calibration.present_long_lived = r.num("radiogenic.present_long_lived");
  sc.calibration.initial_short_lived = r.num("radiogenic.initial_short_lived");
  if (sc.calibration.present_long_lived < 0.0 || sc.calibration.initial_short_lived < 0.0)
    throw ConfigError("configuration key 'radiogenic' values must be non-negative");

  sc.duration_yr = r.num("scenario.duration_yr");
  if (!(sc.duration_yr >= 0.0)) throw ConfigError("configuration key 'scenario.duration_yr' must be non-negative");
  sc.dynamic_step_yr = r.positive("scenario.dynamic_step_yr");
  sc.macro_step_yr = r.positive("scenario.macro_step_yr");
  if (sc.macro_step_yr < sc.dynamic_step_yr)
    throw ConfigError("configuration key 'scenario.macro_step_yr' must be at least scenario.dynamic_step_yr");
  sc.output_every = r.integer("scenario.output_every", 1);
  sc.resonance = r.integer("scenario.resonance", 1);
  if (sc.resonance > 6) throw ConfigError("configuration key 'scenario.resonance' must lie in 1..6");
  sc.auto_place = r.boolean("scenario.auto_place");
  sc.placement_offset_km = r.num("scenario.placement_offset_km");
  sc.inner.elements.e = r.num("scenario.e_inner");
  sc.outer.elements.e = r.num("scenario.e_outer");
  sc.inner.elements.inc = r.num("scenario.inc_inner_deg") * deg;
  for (const char* k : {"scenario.e_inner", "scenario.e_outer"}) {
    const double e = r.num(k);
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError(std::string("configuration key '") + k + "' must lie in [0, 1)");
  }
  sc.initial_profile = r.checked("scenario.initial_profile",
                                 [&] { return initial_profile_from_string(r.str("scenario.initial_profile")); });
  sc.start_epoch_yr = r.num("scenario.start_epoch_yr");
  sc.profile_duration_yr = r.positive("scenario.profile_duration_yr");
  sc.radiogenic = r.boolean("scenario.radiogenic");
  sc.tides = r.boolean("scenario.tides");
  sc.libration_window_yr = r.positive("scenario.libration_window_yr");
  sc.digest = rc.digest;
  rc.checkpoint_path = r.str("scenario.checkpoint_path");
  rc.checkpoint_every = r.integer("scenario.checkpoint_every", 0);
  r.checked("scenario", [&] {
    sc.validate();
    return 0;
  });

  auto& m = rc.map;
  m.model = r.checked("map.model", [&] { return map_model_from_string(r.str("map.model")); });
  m.m5_lo_deg = r.num("map.m5_lo_deg");
  m.m5_hi_deg = r.num("map.m5_hi_deg");
  const bool direct = m.model == MapModel::Direct;
  m.a5_lo = r.opt_num("map.a5_lo").value_or(direct ? 127850.0 : 127820.0);
  m.a5_hi = r.opt_num("map.a5_hi").value_or(direct ? 127900.0 : 127870.0);
  m.n_m = r.integer("map.n_m", 2);
  m.n_a = r.integer("map.n_a", 2);
  m.span_yr = r.positive("map.span_yr");
  m.step_yr = r.positive("map.step_yr");
  m.direct_step_day = r.positive("map.direct_step_day");
  m.inc5_deg = r.num("map.inc5_deg");
  rc.color_scale = r.checked("map.color_scale", [&] { return color_scale_from_string(r.str("map.color_scale")); });
  r.checked("map", [&] {
    m.validate();
    return 0;
  });

  auto& es = rc.estimate;
  es.e_lo = r.num("estimate.e_lo");
  es.e_hi = r.num("estimate.e_hi");
  es.n_e = r.integer("estimate.n_e", 2);
  es.q_lo = r.positive("estimate.q_lo");
  es.q_hi = r.positive("estimate.q_hi");
  es.n_q = r.integer("estimate.n_q", 2);
  es.q_log = r.boolean("estimate.q_log");
  es.k2 = r.opt_num("estimate.k2");
  if (!(es.e_lo >= 0.0 && es.e_hi > es.e_lo && es.e_hi < 1.0))
    throw ConfigError("configuration key 'estimate.e_lo'/'estimate.e_hi' must satisfy 0 <= e_lo < e_hi < 1");
  if (!(es.q_hi > es.q_lo)) throw ConfigError("configuration key 'estimate.q_hi' must exceed estimate.q_lo");

  auto& cv = rc.curves;
  cv.tm_lo = r.positive("rheology_curves.tm_lo");
  cv.tm_hi = r.positive("rheology_curves.tm_hi");
  cv.count = r.integer("rheology_curves.count", 2);
  cv.temperature = r.opt_num("rheology_curves.temperature");
  cv.burgers_eta_ratio = r.positive("rheology_curves.burgers_eta_ratio");
  cv.andrade_beta = r.opt_num("rheology_curves.andrade_beta");
  if (!(cv.tm_hi > cv.tm_lo)) throw ConfigError("configuration key 'rheology_curves.tm_hi' must exceed rheology_curves.tm_lo");
  return rc;
}

RunConfig load_config(const std::optional<std::filesystem::path>& path, const std::string& preset) {
  json user;
  if (path) {
    const std::string text = read_file(*path);
    if (text.find_first_not_of(" \t\r\n") != std::string::npos) user = parse_config_text(text, path->string());
  }
  return build_config(user, preset);
}

}  // namespace orbtherm
