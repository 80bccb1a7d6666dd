#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <fmt/core.h>
#include <json.hpp>

#include <rydberg/io.hpp>
#include <rydberg/sigproc.hpp>

namespace rydsim {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path output_dir(const Scenario& sc, const Flags& flags) {
  fs::path dir = flags.out ? *flags.out : sc.output_dir;
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) v.back() = hi;
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v = linspace(std::log10(lo), std::log10(hi), n);
  for (double& x : v) x = std::pow(10.0, x);
  v.front() = lo;
  v.back() = hi;
  return v;
}

double operating_delta(const Scenario& sc) {
  if (sc.delta) return *sc.delta;
  return rydberg::optimal_operating_point(sc.atom, sc.medium, sc.budget, 1e-3, 20.0).delta;
}

rydberg::SensorConfig sensor(const Scenario& sc, double e_bias) {
  return {sc.atom, sc.medium, sc.stark, sc.budget, operating_delta(sc), e_bias};
}

ordered_json peaks_json(const std::vector<rydberg::Peak>& peaks) {
  ordered_json list = ordered_json::array();
  for (const auto& p : peaks) list.push_back({{"f_hz", p.freq}, {"magnitude", p.magnitude}});
  return list;
}

}  // namespace

void check_for_command(const std::string& command, const Scenario& sc, const Flags& flags) {
  if (flags.points && *flags.points < 3) throw ConfigError("--points: need at least three points");
  if (command == "dc" || command == "ac") {
    if (sc.e_bias == 0.0) throw ConfigError("sensor.e_bias: the " + command + " command needs a nonzero bias");
  }
  if (command == "ac" && sc.field.f_ac > 0.5 * sc.ac.sample_rate)
    throw ConfigError("field.f_ac: above the Nyquist frequency of ac.sample_rate");
}

void cmd_spectrum(const Scenario& sc, const Flags& flags) {
  const auto& p = sc.spectrum;
  const std::size_t n = flags.points.value_or(p.points);
  std::vector<double> dc_col, e_col, v_col;
  fmt::print("{:>14} {:>14} {:>14}\n", "E (V/m)", "shift (MHz)", "line (MHz)");
  for (const double e : p.fields_v_per_m) {
    const double e_cm = e * rydberg::kVPerMToVPerCm;
    const double shift = rydberg::stark_shift(sc.stark, e_cm);
    double best_x = 0.0;
    double best_v = 0.0;
    const auto grid = linspace(p.delta_c_min, p.delta_c_max, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid[i];
      const double rho = rydberg::shifted_absorption(sc.atom, sc.stark, x, e_cm, p.model);
      const double value = p.observable == rydberg::Observable::absorption
                               ? rho
                               : sc.medium.eta0 * std::exp(-sc.medium.beta * rho);
      // Transparency centre: smallest absorption / largest transmittance.
      const double score = p.observable == rydberg::Observable::absorption ? -value : value;
      if (i == 0 || score > best_v) {
        best_v = score;
        best_x = x;
      }
      dc_col.push_back(x);
      e_col.push_back(e);
      v_col.push_back(value);
    }
    fmt::print("{:>14.6g} {:>14.6g} {:>14.6g}\n", e, shift, best_x);
  }
  rydberg::write_csv((output_dir(sc, flags) / "spectrum.csv").string(),
                     {"delta_c_mhz", "e_field_v_per_m", "value"}, {dc_col, e_col, v_col});
}

void cmd_fisher(const Scenario& sc, const Flags& flags) {
  const auto& p = sc.fisher;
  const auto delta_axis = linspace(p.delta_c_min, p.delta_c_max, flags.points.value_or(p.delta_c_points));
  const auto omega_axis = linspace(p.omega_c_min, p.omega_c_max, p.omega_c_points);

  const auto map = rydberg::fisher_map(sc.atom, sc.medium, sc.budget, delta_axis, omega_axis);
  const auto rows = rydberg::tradeoff_sweep(sc.atom, sc.medium, sc.budget, omega_axis, p.tradeoff);
  const auto op = rydberg::optimal_operating_point(sc.atom, sc.medium, sc.budget, p.tradeoff.search_lo,
                                                   p.tradeoff.search_hi);
  const double slope_point = rydberg::max_slope_detuning(sc.atom, sc.medium, rydberg::Observable::absorption,
                                                         rydberg::LineModel::density_matrix, 0.5, 30.0);

  const fs::path dir = output_dir(sc, flags);
  {
    std::vector<double> om, dc, fi;
    for (std::size_t r = 0; r < omega_axis.size(); ++r)
      for (std::size_t c = 0; c < delta_axis.size(); ++c) {
        om.push_back(omega_axis[r]);
        dc.push_back(delta_axis[c]);
        fi.push_back(map.at(r, c));
      }
    rydberg::write_csv((dir / "fi_map.csv").string(), {"omega_c_mhz", "delta_c_mhz", "fi"}, {om, dc, fi});
  }
  {
    std::vector<double> fi(delta_axis.size());
    for (std::size_t c = 0; c < delta_axis.size(); ++c)
      fi[c] = rydberg::fi_stark_shift(sc.atom, sc.medium, sc.budget, delta_axis[c]);
    rydberg::write_csv((dir / "fi_slice.csv").string(), {"delta_c_mhz", "fi"}, {delta_axis, fi});
  }
  {
    std::vector<double> om, d, f, r;
    for (const auto& row : rows) {
      om.push_back(row.omega_c);
      d.push_back(row.delta_opt);
      f.push_back(row.f_max);
      r.push_back(row.usable_range);
    }
    rydberg::write_csv((dir / "tradeoff.csv").string(),
                       {"omega_c_mhz", "delta_opt_mhz", "f_max", "usable_range_mhz"}, {om, d, f, r});
  }
  // sqrt(CRLB) over the central window; infinite where the FI vanishes.
  double min_dds = std::numeric_limits<double>::infinity();
  {
    const auto axis = linspace(-p.crlb_half_width, p.crlb_half_width, p.crlb_points);
    std::vector<double> dds(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double fi = rydberg::fi_stark_shift(sc.atom, sc.medium, sc.budget, axis[i]);
      dds[i] = fi > 0.0 ? std::sqrt(1.0 / fi) : std::numeric_limits<double>::infinity();
      min_dds = std::min(min_dds, dds[i]);
    }
    if (op.delta <= p.crlb_half_width) min_dds = std::min(min_dds, std::sqrt(rydberg::crlb(op.fi_at_delta)));
    rydberg::write_csv((dir / "crlb_slice.csv").string(), {"delta_c_mhz", "sqrt_crlb_mhz_sqrthz"}, {axis, dds});
  }

  ordered_json summary;
  summary["omega_c_mhz"] = sc.atom.omega_c;
  summary["beta"] = sc.medium.beta;
  summary["n0"] = sc.budget.n0;
  summary["delta_opt_mhz"] = op.delta;
  summary["fi_max"] = op.fi_at_delta;
  summary["min_dds_mhz_sqrthz"] = min_dds;
  summary["min_dds_hz_sqrthz"] = min_dds * 1e6;
  summary["max_slope_delta_mhz"] = slope_point;
  write_json(dir / "summary.json", summary);

  fmt::print("delta_opt       {:.6f} MHz\n", op.delta);
  fmt::print("FI max          {:.6e} MHz^-2\n", op.fi_at_delta);
  fmt::print("min sqrt(CRLB)  {:.6e} MHz/sqrt(Hz) = {:.6e} Hz/sqrt(Hz)\n", min_dds, min_dds * 1e6);
  fmt::print("max slope at    {:.6f} MHz\n", slope_point);
  fmt::print("\n{:>10} {:>12} {:>14} {:>12}\n", "Omega_c", "delta_opt", "F_max", "R_dS");
  for (const auto& row : rows)
    fmt::print("{:>10.4g} {:>12.6f} {:>14.6e} {:>12.4f}\n", row.omega_c, row.delta_opt, row.f_max,
               row.usable_range);
}

void cmd_dc(const Scenario& sc, const Flags& flags) {
  const auto& p = sc.dc;
  const rydberg::SensorConfig cfg = sensor(sc, sc.e_bias);
  const auto fields = logspace(p.e_min, p.e_max, flags.points.value_or(p.points));
  std::vector<double> e_hat(fields.size()), rel(fields.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    e_hat[i] = rydberg::dc_retrieve_biased(cfg, fields[i]).e_hat;
    rel[i] = std::abs(e_hat[i] - fields[i]) / fields[i];
    worst = std::max(worst, rel[i]);
  }

  const auto axis = linspace(p.delta_c_min, p.delta_c_max, p.delta_c_points);
  std::vector<double> de_min(axis.size());
  double best = std::numeric_limits<double>::infinity();
  double best_at = 0.0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const double d = std::abs(axis[i]);
    de_min[i] = std::numeric_limits<double>::infinity();
    if (d > 0.0) {
      const double fi = rydberg::fi_dc_biased(cfg.with_delta(d));
      if (fi > 0.0) de_min[i] = 1.0 / std::sqrt(fi);
    }
    if (de_min[i] < best) {
      best = de_min[i];
      best_at = axis[i];
    }
  }

  const fs::path dir = output_dir(sc, flags);
  rydberg::write_csv((dir / "dc_retrieval.csv").string(), {"e_true_v_per_m", "e_hat_v_per_m", "rel_error"},
                     {fields, e_hat, rel});
  rydberg::write_csv((dir / "de_min.csv").string(), {"delta_c_mhz", "de_min_v_per_m_sqrthz"}, {axis, de_min});

  ordered_json summary;
  summary["delta_mhz"] = cfg.delta();
  summary["e_bias_v_per_m"] = cfg.e_bias();
  summary["max_rel_error"] = worst;
  summary["de_min_at_delta"] = rydberg::min_detectable_field(cfg);
  summary["de_min_grid_min"] = best;
  summary["de_min_grid_argmin_mhz"] = best_at;
  write_json(dir / "dc_summary.json", summary);

  fmt::print("delta            {:.6f} MHz, E0 = {:g} V/m\n", cfg.delta(), cfg.e_bias());
  fmt::print("max rel error    {:.3e} over [{:g}, {:g}] V/m\n", worst, p.e_min, p.e_max);
  fmt::print("dE_min at delta  {:.6e} V/m/sqrt(Hz)\n", rydberg::min_detectable_field(cfg));
  fmt::print("grid minimum     {:.6e} V/m/sqrt(Hz) at {:.4f} MHz\n", best, best_at);
}

void cmd_ac(const Scenario& sc, const Flags& flags) {
  const auto& p = sc.ac;
  std::optional<rydberg::NoiseSpec> noise = sc.noise;
  if (noise) noise->seed = flags.seed.value_or(sc.seed);

  const rydberg::SensorConfig biased = sensor(sc, sc.e_bias);
  const rydberg::SensorConfig unbiased = biased.with_bias(0.0);

  const auto field_b = rydberg::synthesize_field(sc.field, p.duration, p.sample_rate, biased.e_bias());
  const auto field_u = rydberg::synthesize_field(sc.field, p.duration, p.sample_rate, 0.0);
  const auto sensed_b = rydberg::sense_timeseries(biased, field_b, noise);
  const auto sensed_u = rydberg::sense_timeseries(unbiased, field_u, noise);

  const auto demod = rydberg::demodulate(sensed_b.rho_ab, sc.field.f_ac, biased);
  const auto spec_u = rydberg::dft(sensed_u.rho_a);
  const double nyquist = 0.5 * p.sample_rate;

  const auto peaks_b = rydberg::peak_pick(demod.spectrum, p.band_min, p.band_max, p.peaks);
  const auto peaks_u = rydberg::peak_pick(spec_u, p.band_min, p.band_max, p.peaks);
  const double floor_b = rydberg::spectral_floor(demod.spectrum, demod.spectrum.bin_width, nyquist);
  const double floor_u = rydberg::spectral_floor(spec_u, spec_u.bin_width, nyquist);
  const double f_est = rydberg::estimate_frequency(demod.spectrum, p.band_min, p.band_max);

  const fs::path dir = output_dir(sc, flags);
  rydberg::write_timeseries((dir / "unbiased_timeseries.csv").string(), sensed_u.rho_a);
  rydberg::write_spectrum((dir / "unbiased_spectrum.csv").string(), spec_u);
  rydberg::write_timeseries((dir / "biased_timeseries.csv").string(), sensed_b.rho_ab);
  rydberg::write_spectrum((dir / "biased_spectrum.csv").string(), demod.spectrum);

  ordered_json summary;
  summary["seed"] = noise ? ordered_json(noise->seed) : ordered_json(nullptr);
  summary["delta_mhz"] = biased.delta();
  summary["e_bias_v_per_m"] = biased.e_bias();
  summary["f_ac_hz"] = sc.field.f_ac;
  summary["amplitude_hat_v_per_m"] = demod.amplitude_hat;
  summary["phase_rad"] = demod.phase;
  summary["f_estimate_hz"] = f_est;
  summary["fi_ac"] = rydberg::fi_ac(biased, sc.field.f_ac, p.duration);
  summary["biased"] = {{"floor", floor_b},
                       {"line_at_f_ac", demod.spectrum.magnitudes[demod.spectrum.nearest_bin(sc.field.f_ac)]},
                       {"top_peaks", peaks_json(peaks_b)}};
  summary["unbiased"] = {{"floor", floor_u},
                         {"line_at_f_ac", spec_u.magnitudes[spec_u.nearest_bin(sc.field.f_ac)]},
                         {"top_peaks", peaks_json(peaks_u)}};
  write_json(dir / "ac_summary.json", summary);

  fmt::print("A_hat  {:.6g} V/m (true {:g}), phase {:.4f} rad\n", demod.amplitude_hat, sc.field.a, demod.phase);
  fmt::print("f_est  {:.4f} Hz\n", f_est);
  fmt::print("\nbiased differential, floor {:.3e}\n", floor_b);
  for (const auto& pk : peaks_b) fmt::print("  {:>10.3f} Hz  {:.4e}\n", pk.freq, pk.magnitude);
  fmt::print("unbiased single point, floor {:.3e}\n", floor_u);
  for (const auto& pk : peaks_u) fmt::print("  {:>10.3f} Hz  {:.4e}\n", pk.freq, pk.magnitude);
}

void cmd_cavity(const Scenario& sc, const Flags& flags) {
  const rydberg::FieldInformation info{sc.budget, sc.stark, sc.e_bias};
  const auto report = rydberg::enhancement_report(sc.cavity, sc.atom, sc.medium, info);

  const std::size_t n = flags.points.value_or(sc.cavity_scan.scan_points);
  const auto free_axis = linspace(-rydberg::kFreeSpaceHalfWidth, rydberg::kFreeSpaceHalfWidth, n);
  const auto cav_axis = linspace(-report.cavity_half_width, report.cavity_half_width, n);
  std::vector<double> free_v(n), cav_v(n);
  for (std::size_t i = 0; i < n; ++i) {
    free_v[i] = rydberg::transmittance(sc.atom, sc.medium, free_axis[i]);
    cav_v[i] = rydberg::cavity_transmission(sc.cavity, sc.atom, sc.medium, cav_axis[i]);
  }
  const fs::path dir = output_dir(sc, flags);
  rydberg::write_csv((dir / "free_space_scan.csv").string(), {"delta_c_mhz", "transmission"}, {free_axis, free_v});
  rydberg::write_csv((dir / "cavity_scan.csv").string(), {"delta_c_mhz", "transmission"}, {cav_axis, cav_v});

  auto metrics = [](const rydberg::CavityMetrics& m) {
    return ordered_json{{"fwhm_mhz", m.fwhm},
                        {"max_slope_per_mhz", m.max_slope},
                        {"max_slope_at_mhz", m.max_slope_at},
                        {"peak_fi", m.peak_fi},
                        {"peak_fi_at_mhz", m.peak_fi_at},
                        {"de_min_v_per_m_sqrthz", 1.0 / std::sqrt(m.peak_fi)}};
  };
  ordered_json doc;
  doc["r"] = sc.cavity.r;
  doc["cav_length_m"] = sc.cavity.cav_length;
  doc["cell_length_m"] = sc.cavity.cell_length;
  doc["free_spectral_range_mhz"] = sc.cavity.free_spectral_range();
  doc["factors"] = {{"inverse_linewidth", report.inverse_linewidth},
                    {"max_slope", report.slope},
                    {"peak_fi", report.fisher},
                    {"sensitivity", report.sensitivity}};
  doc["free_space"] = metrics(report.free_space);
  doc["cavity"] = metrics(report.cavity);
  doc["cavity_scan"] = {{"half_width_mhz", report.cavity_half_width}, {"points", report.cavity_points}};
  write_json(dir / "enhancement.json", doc);

  fmt::print("{:<12} {:>14} {:>14} {:>10}\n", "", "free space", "cavity", "factor");
  fmt::print("{:<12} {:>14.6g} {:>14.6g} {:>10.4g}\n", "FWHM (MHz)", report.free_space.fwhm, report.cavity.fwhm,
             report.inverse_linewidth);
  fmt::print("{:<12} {:>14.6g} {:>14.6g} {:>10.4g}\n", "max slope", report.free_space.max_slope,
             report.cavity.max_slope, report.slope);
  fmt::print("{:<12} {:>14.6g} {:>14.6g} {:>10.4g}\n", "peak FI", report.free_space.peak_fi, report.cavity.peak_fi,
             report.fisher);
  fmt::print("{:<12} {:>14.6g} {:>14.6g} {:>10.4g}\n", "dE_min", 1.0 / std::sqrt(report.free_space.peak_fi),
             1.0 / std::sqrt(report.cavity.peak_fi), report.sensitivity);
}

}  // namespace rydsim
