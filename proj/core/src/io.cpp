#include "rydberg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rydberg {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header/column mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << format_double(columns[j][i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  table.columns.resize(table.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= table.columns.size()) throw std::runtime_error("read_csv: too many fields in " + path);
      table.columns[j++].push_back(std::stod(cell));
    }
    if (j != table.columns.size()) throw std::runtime_error("read_csv: too few fields in " + path);
  }
  return table;
}

void write_timeseries(const std::string& path, const TimeSeries& series) {
  std::vector<double> t(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) t[i] = series.time(i);
  write_csv(path, {"t_s", "value"}, {t, series.samples});
}

TimeSeries read_timeseries(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.columns.size() != 2 || table.columns[0].size() < 2)
    throw std::runtime_error("read_timeseries: expected t_s,value with two or more rows");
  TimeSeries series;
  const auto& t = table.columns[0];
  series.t0 = t.front();
  series.sample_rate = static_cast<double>(t.size() - 1) / (t.back() - t.front());
  series.samples = std::move(table.columns[1]);
  return series;
}

void write_spectrum(const std::string& path, const Spectrum& spec) {
  write_csv(path, {"f_hz", "magnitude", "phase_rad"}, {spec.freqs, spec.magnitudes, spec.phases});
}

Spectrum read_spectrum(const std::string& path) {
  CsvTable table = read_csv(path);
  if (table.columns.size() != 3) throw std::runtime_error("read_spectrum: expected three columns");
  Spectrum spec;
  spec.freqs = std::move(table.columns[0]);
  spec.magnitudes = std::move(table.columns[1]);
  spec.phases = std::move(table.columns[2]);
  spec.bin_width = spec.freqs.size() > 1 ? spec.freqs[1] - spec.freqs[0] : 0.0;
  return spec;
}

}  // namespace rydberg
