#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include <rydberg/error.hpp>

namespace rydsim {
namespace {

using nlohmann::json;

// Hands out members of one JSON object and complains about leftovers.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    try {
      out = node_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + ": wrong type");
    }
  }

  template <typename T>
  void get_count(const char* key, T& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(path_ + "." + key + ": expected a non-negative integer");
    out = v.get<T>();
  }

  bool has(const char* key) const { return node_.contains(key); }

  Section child(const char* key) {
    seen_.insert(key);
    return Section(node_.at(key), path_ + "." + key);
  }

  const json& raw(const char* key) {
    seen_.insert(key);
    return node_.at(key);
  }

  void finish() const {
    for (const auto& item : node_.items())
      if (!seen_.count(item.key())) throw ConfigError(path_ + ": unknown key '" + item.key() + "'");
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_atom(Section s, rydberg::AtomSystem& a) {
  s.get("omega_p", a.omega_p);
  s.get("omega_c", a.omega_c);
  s.get("delta_p", a.delta_p);
  s.get("gamma_e", a.gamma_e);
  s.get("gamma_r", a.gamma_r);
  s.finish();
}

void read_medium(Section s, const rydberg::AtomSystem& atom, rydberg::OpticalMedium& m) {
  if (s.has("beta") && s.has("calibrate_fwhm"))
    throw ConfigError(s.path() + ": give either beta or calibrate_fwhm, not both");
  s.get("beta", m.beta);
  s.get("eta0", m.eta0);
  if (s.has("calibrate_fwhm")) {
    double target = 0.0;
    s.get("calibrate_fwhm", target);
    s.finish();
    try {
      m.beta = rydberg::calibrate_beta(atom, target);
    } catch (const rydberg::ModelError& e) {
      throw ConfigError(s.path() + ".calibrate_fwhm: " + e.what());
    }
    return;
  }
  s.finish();
}

void read_field(Section s, rydberg::FieldSpec& f) {
  s.get("a", f.a);
  s.get("f_ac", f.f_ac);
  s.get("phi", f.phi);
  if (s.has("harmonics")) {
    const json& list = s.raw("harmonics");
    if (!list.is_array()) throw ConfigError(s.path() + ".harmonics: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section h(list[i], s.path() + ".harmonics[" + std::to_string(i) + "]");
      rydberg::Harmonic harmonic;
      h.get("order", harmonic.order);
      h.get("amplitude", harmonic.amplitude);
      h.get("phase", harmonic.phase);
      h.finish();
      f.harmonics.push_back(harmonic);
    }
  }
  if (s.has("drift")) {
    Section d = s.child("drift");
    d.get("amplitude", f.drift.amplitude);
    d.get("freq", f.drift.freq);
    d.get("phase", f.drift.phase);
    d.finish();
  }
  s.finish();
}

rydberg::Observable parse_observable(const std::string& name) {
  if (name == "absorption") return rydberg::Observable::absorption;
  if (name == "transmittance") return rydberg::Observable::transmittance;
  throw ConfigError("spectrum.observable: expected 'absorption' or 'transmittance'");
}

rydberg::LineModel parse_model(const std::string& name) {
  if (name == "weak_probe") return rydberg::LineModel::weak_probe;
  if (name == "density_matrix") return rydberg::LineModel::density_matrix;
  throw ConfigError("spectrum.model: expected 'weak_probe' or 'density_matrix'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_range(double lo, double hi, std::size_t n, const std::string& what) {
  require(lo < hi, what + ": min must be below max");
  require(n >= 2, what + ": need at least two points");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }

  Scenario sc;
  Section root(doc, "config");
  if (root.has("atom")) read_atom(root.child("atom"), sc.atom);
  if (root.has("medium")) read_medium(root.child("medium"), sc.atom, sc.medium);
  if (root.has("stark")) {
    Section s = root.child("stark");
    s.get("alpha", sc.stark.alpha);
    s.get("label", sc.stark.label);
    s.finish();
  }
  if (root.has("budget")) {
    Section s = root.child("budget");
    s.get("n0", sc.budget.n0);
    s.finish();
  }
  if (root.has("sensor")) {
    Section s = root.child("sensor");
    if (s.has("delta")) {
      double delta = 0.0;
      s.get("delta", delta);
      sc.delta = delta;
    }
    s.get("e_bias", sc.e_bias);
    s.finish();
  }
  if (root.has("cavity")) {
    Section s = root.child("cavity");
    s.get("r", sc.cavity.r);
    s.get("cav_length", sc.cavity.cav_length);
    s.get("cell_length", sc.cavity.cell_length);
    s.get("probe_cavity_detuning", sc.cavity.probe_cavity_detuning);
    s.get_count("scan_points", sc.cavity_scan.scan_points);
    s.finish();
  }
  if (root.has("field")) read_field(root.child("field"), sc.field);
  if (root.has("noise")) {
    Section s = root.child("noise");
    rydberg::NoiseSpec n;
    s.get("m_i", n.m_i);
    s.get("f_i", n.f_i);
    s.get("phi_i", n.phi_i);
    s.get("sigma_i", n.sigma_i);
    s.get("additive_rms_frac", n.additive_rms_frac);
    s.finish();
    sc.noise = n;
  }
  root.get_count("seed", sc.seed);
  root.get("output_dir", sc.output_dir);

  if (root.has("spectrum")) {
    Section s = root.child("spectrum");
    auto& p = sc.spectrum;
    s.get("delta_c_min", p.delta_c_min);
    s.get("delta_c_max", p.delta_c_max);
    s.get_count("points", p.points);
    std::string observable = "absorption";
    std::string model = "weak_probe";
    s.get("observable", observable);
    s.get("model", model);
    p.observable = parse_observable(observable);
    p.model = parse_model(model);
    s.get("fields_v_per_m", p.fields_v_per_m);
    s.finish();
  }
  if (root.has("fisher")) {
    Section s = root.child("fisher");
    auto& p = sc.fisher;
    s.get("delta_c_min", p.delta_c_min);
    s.get("delta_c_max", p.delta_c_max);
    s.get_count("delta_c_points", p.delta_c_points);
    s.get("omega_c_min", p.omega_c_min);
    s.get("omega_c_max", p.omega_c_max);
    s.get_count("omega_c_points", p.omega_c_points);
    s.get("search_lo", p.tradeoff.search_lo);
    s.get("search_hi", p.tradeoff.search_hi);
    s.get("tolerance", p.tradeoff.tolerance);
    s.get("crlb_half_width", p.crlb_half_width);
    s.get_count("crlb_points", p.crlb_points);
    s.finish();
  }
  if (root.has("dc")) {
    Section s = root.child("dc");
    auto& p = sc.dc;
    s.get("e_min", p.e_min);
    s.get("e_max", p.e_max);
    s.get_count("points", p.points);
    s.get("delta_c_min", p.delta_c_min);
    s.get("delta_c_max", p.delta_c_max);
    s.get_count("delta_c_points", p.delta_c_points);
    s.finish();
  }
  if (root.has("ac")) {
    Section s = root.child("ac");
    auto& p = sc.ac;
    s.get("duration", p.duration);
    s.get("sample_rate", p.sample_rate);
    s.get("band_min", p.band_min);
    s.get("band_max", p.band_max);
    s.get_count("peaks", p.peaks);
    s.finish();
  }
  root.finish();

  try {
    sc.atom.validate();
    sc.medium.validate();
    sc.stark.validate();
    sc.budget.validate();
    sc.cavity.validate();
    sc.field.validate();
    if (sc.noise) sc.noise->validate();
  } catch (const rydberg::ModelError& e) {
    throw ConfigError(e.what());
  }
  if (sc.delta) require(*sc.delta > 0.0, "sensor.delta: must be > 0");
  require(std::isfinite(sc.e_bias), "sensor.e_bias: must be finite");

  check_range(sc.spectrum.delta_c_min, sc.spectrum.delta_c_max, sc.spectrum.points, "spectrum");
  require(!sc.spectrum.fields_v_per_m.empty(), "spectrum.fields_v_per_m: empty");
  check_range(sc.fisher.delta_c_min, sc.fisher.delta_c_max, sc.fisher.delta_c_points, "fisher.delta_c");
  require(sc.fisher.omega_c_points >= 1, "fisher.omega_c_points: omega_c axis is empty");
  require(sc.fisher.omega_c_min > 0.0 && sc.fisher.omega_c_min <= sc.fisher.omega_c_max,
          "fisher.omega_c: need 0 < min <= max");
  require(sc.fisher.omega_c_points == 1 || sc.fisher.omega_c_min < sc.fisher.omega_c_max,
          "fisher.omega_c: min must be below max");
  require(sc.fisher.tradeoff.search_lo > 0.0 && sc.fisher.tradeoff.search_hi > sc.fisher.tradeoff.search_lo,
          "fisher.search: need 0 < search_lo < search_hi");
  require(sc.fisher.tradeoff.tolerance > 0.0 && sc.fisher.tradeoff.tolerance < 1.0,
          "fisher.tolerance: must lie in (0, 1)");
  require(sc.fisher.crlb_half_width > 0.0 && sc.fisher.crlb_points >= 2, "fisher.crlb: bad window");
  require(sc.dc.e_min > 0.0 && sc.dc.e_max > sc.dc.e_min && sc.dc.points >= 2, "dc: need 0 < e_min < e_max");
  check_range(sc.dc.delta_c_min, sc.dc.delta_c_max, sc.dc.delta_c_points, "dc.delta_c");
  require(sc.ac.duration > 0.0 && sc.ac.sample_rate > 0.0, "ac: duration and sample_rate must be > 0");
  require(sc.ac.band_max > sc.ac.band_min && sc.ac.band_min >= 0.0 && sc.ac.peaks >= 1, "ac: bad band");
  require(sc.cavity_scan.scan_points >= 3, "cavity.scan_points: need at least three points");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace rydsim
