#pragma once

// CSV round trip for sampled series and spectra. Values are written with 17
// significant digits so a read-back reproduces every double exactly.

#include <string>
#include <vector>

#include "rydberg/sigproc.hpp"

namespace rydberg {

/// Writes a header row and the columns side by side. All columns must have
/// equal length. Throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

CsvTable read_csv(const std::string& path);

/// Columns t_s,value.
void write_timeseries(const std::string& path, const TimeSeries& series);
TimeSeries read_timeseries(const std::string& path);

/// Columns f_hz,magnitude,phase_rad.
void write_spectrum(const std::string& path, const Spectrum& spec);
Spectrum read_spectrum(const std::string& path);

/// %.17g formatting.
std::string format_double(double value);

}  // namespace rydberg
