#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fes {

// A uniformly sampled fluctuation record (volts, arbitrary gain).
struct TimeSeries {
  std::vector<double> samples;
  double sample_rate_hz{0.0};
  std::string label;   // free-text identifier
  std::string source;  // provenance: file path or synthesizer description
};

// Enforces the invariants: rate > 0, at least 2 samples, all samples finite.
void validate(const TimeSeries& ts);

// Validating constructor.
TimeSeries make_timeseries(std::vector<double> samples, double sample_rate_hz,
                           std::string label = {}, std::string source = {});

enum class TimeSeriesFormat {
  csv,      // UTF-8, one float per line, '#'-prefixed comment lines ignored
  raw_f64,  // contiguous little-endian IEEE-754 float64, no header
};

// .csv -> csv, anything else -> raw_f64.
TimeSeriesFormat guess_timeseries_format(const std::filesystem::path& path);

// The sample rate is a mandatory caller argument; neither file format
// embeds it.
TimeSeries load_timeseries(const std::filesystem::path& path,
                           TimeSeriesFormat format, double sample_rate_hz);

// CSV output carries 17 significant digits so values round-trip exactly.
void write_timeseries(const TimeSeries& ts, const std::filesystem::path& path,
                      TimeSeriesFormat format);

enum class DetrendMode { mean, linear };

const char* to_string(DetrendMode mode) noexcept;
DetrendMode detrend_mode_from_string(const std::string& name);

// Removes the classical (slow) signal component so only fluctuations remain.
// mean subtracts the sample mean; linear subtracts the least-squares line
// over the sample index. Both are idempotent to rounding.
TimeSeries detrend(const TimeSeries& ts, DetrendMode mode);

// Compensated (Kahan) accumulation; exactness here feeds the detrend and
// Parseval tolerances.
double mean(std::span<const double> x);
double variance(std::span<const double> x);  // population variance

}  // namespace fes
