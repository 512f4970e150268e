#include "fes/time_series.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "fes/errors.hpp"

namespace fes {

namespace {

// Kahan-compensated sum.
double csum(std::span<const double> x) {
  double sum = 0.0, c = 0.0;
  for (double v : x) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double csum_weighted_index(std::span<const double> x, double center) {
  double sum = 0.0, c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double y = (static_cast<double>(i) - center) * x[i] - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void subtract_line(std::vector<double>& x, double intercept, double slope,
                   double center) {
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] -= intercept + slope * (static_cast<double>(i) - center);
}

}  // namespace

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return csum(x) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double sum = 0.0, c = 0.0;
  for (double v : x) {
    double d = (v - m) * (v - m) - c;
    double t = sum + d;
    c = (t - sum) - d;
    sum = t;
  }
  return sum / static_cast<double>(x.size());
}

void validate(const TimeSeries& ts) {
  if (!(ts.sample_rate_hz > 0.0) || !std::isfinite(ts.sample_rate_hz))
    raise(Errc::invalid_rate,
          "sample rate must be a positive finite value, got " +
              std::to_string(ts.sample_rate_hz));
  if (ts.samples.size() < 2)
    raise(Errc::empty_input, "time series needs at least 2 samples, got " +
                                 std::to_string(ts.samples.size()));
  for (std::size_t i = 0; i < ts.samples.size(); ++i)
    if (!std::isfinite(ts.samples[i]))
      raise(Errc::invalid_argument,
            "non-finite sample at index " + std::to_string(i));
}

TimeSeries make_timeseries(std::vector<double> samples, double sample_rate_hz,
                           std::string label, std::string source) {
  TimeSeries ts{std::move(samples), sample_rate_hz, std::move(label),
                std::move(source)};
  validate(ts);
  return ts;
}

TimeSeriesFormat guess_timeseries_format(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? TimeSeriesFormat::csv
                                    : TimeSeriesFormat::raw_f64;
}

namespace {

std::vector<double> load_csv_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::storage_error, "cannot open " + path.string());
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const char* begin = line.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    // The full line must be one numeric field.
    while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
    if (end == begin || *end != '\0' || !std::isfinite(v))
      raise(Errc::parse_error, "non-numeric sample at line " +
                                   std::to_string(line_no) + " in " +
                                   path.string());
    samples.push_back(v);
  }
  return samples;
}

std::vector<double> load_raw_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::storage_error, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  if (bytes % sizeof(double) != 0)
    raise(Errc::parse_error, path.string() + " is not a whole number of " +
                                 "little-endian float64 records");
  std::vector<double> samples(bytes / sizeof(double));
  in.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(bytes));
  if (!in) raise(Errc::storage_error, "short read on " + path.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (double& v : samples) {
      std::uint64_t u;
      std::memcpy(&u, &v, 8);
      u = __builtin_bswap64(u);
      std::memcpy(&v, &u, 8);
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!std::isfinite(samples[i]))
      raise(Errc::parse_error,
            "non-finite sample at record " + std::to_string(i) + " in " +
                path.string());
  return samples;
}

}  // namespace

TimeSeries load_timeseries(const std::filesystem::path& path,
                           TimeSeriesFormat format, double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
    raise(Errc::invalid_rate, "sample rate must be positive, got " +
                                  std::to_string(sample_rate_hz));
  if (!std::filesystem::exists(path))
    raise(Errc::file_not_found, path.string());
  std::vector<double> samples = format == TimeSeriesFormat::csv
                                    ? load_csv_samples(path)
                                    : load_raw_samples(path);
  if (samples.size() < 2)
    raise(Errc::empty_input,
          path.string() + " holds fewer than 2 samples");
  return make_timeseries(std::move(samples), sample_rate_hz,
                         path.stem().string(), path.string());
}

void write_timeseries(const TimeSeries& ts, const std::filesystem::path& path,
                      TimeSeriesFormat format) {
  validate(ts);
  if (format == TimeSeriesFormat::csv) {
    std::ofstream out(path);
    if (!out) raise(Errc::storage_error, "cannot write " + path.string());
    char buf[40];
    for (double v : ts.samples) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf << '\n';
    }
    if (!out) raise(Errc::storage_error, "write failed on " + path.string());
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::storage_error, "cannot write " + path.string());
    if constexpr (std::endian::native == std::endian::big) {
      for (double v : ts.samples) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        u = __builtin_bswap64(u);
        out.write(reinterpret_cast<const char*>(&u), 8);
      }
    } else {
      out.write(reinterpret_cast<const char*>(ts.samples.data()),
                static_cast<std::streamsize>(ts.samples.size() * 8));
    }
    if (!out) raise(Errc::storage_error, "write failed on " + path.string());
  }
}

const char* to_string(DetrendMode mode) noexcept {
  return mode == DetrendMode::mean ? "mean" : "linear";
}

DetrendMode detrend_mode_from_string(const std::string& name) {
  if (name == "mean") return DetrendMode::mean;
  if (name == "linear") return DetrendMode::linear;
  raise(Errc::parse_error, "unknown detrend mode '" + name + "'");
}

TimeSeries detrend(const TimeSeries& ts, DetrendMode mode) {
  validate(ts);
  TimeSeries out = ts;
  auto& x = out.samples;
  const auto n = static_cast<double>(x.size());
  if (mode == DetrendMode::mean) {
    double m = mean(x);
    for (double& v : x) v -= m;
    // One refinement pass pins the residual mean well below rounding of
    // a single subtraction.
    double r = mean(x);
    for (double& v : x) v -= r;
  } else {
    // Least squares over the sample index, centered so the normal
    // equations decouple: slope = sum(t*x) / sum(t^2) with t = i - (n-1)/2.
    const double center = (n - 1.0) / 2.0;
    const double t2 = n * (n * n - 1.0) / 12.0;  // sum of t^2, closed form
    double slope = csum_weighted_index(x, center) / t2;
    double intercept = mean(x);
    subtract_line(x, intercept, slope, center);
    slope = csum_weighted_index(x, center) / t2;
    intercept = mean(x);
    subtract_line(x, intercept, slope, center);
  }
  return out;
}

}  // namespace fes
