#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fes/time_series.hpp"

namespace fes {

enum class Window { hann, hamming, rectangular };
enum class SegmentDetrend { none, mean, linear };

const char* to_string(Window w) noexcept;
Window window_from_string(const std::string& name);
const char* to_string(SegmentDetrend d) noexcept;
SegmentDetrend segment_detrend_from_string(const std::string& name);

// Parameters of the Welch PDS estimator. Defaults (hann, 50% overlap,
// per-segment mean removal) favor low variance on colored fluctuation
// spectra.
struct WelchConfig {
  int segment_length{4096};      // power of two, >= 16
  double overlap_fraction{0.5};  // in [0, 1)
  Window window{Window::hann};
  SegmentDetrend per_segment_detrend{SegmentDetrend::mean};

  friend bool operator==(const WelchConfig&, const WelchConfig&) = default;
};

void validate(const WelchConfig& cfg);

// Hop between segment starts: segment_length - floor(overlap * length).
int welch_segment_step(const WelchConfig& cfg);
// Number of full segments available in a record of n samples (0 if short).
int welch_segment_count(const WelchConfig& cfg, std::size_t n_samples);

struct SpectrumMeta {
  WelchConfig welch;
  std::string source_label;
  // Set by restrict_band / smooth_log respectively.
  std::optional<double> band_lo_hz;
  std::optional<double> band_hi_hz;
  std::optional<int> smoothed_points_per_decade;

  friend bool operator==(const SpectrumMeta&, const SpectrumMeta&) = default;
};

// One-sided power density spectrum, amplitude^2 per Hz. The DC bin is
// excluded; frequencies are strictly increasing. Normalization is such that
// the trapezoidal integral of psd over frequency approximates the variance
// of the (detrended) signal.
struct PowerSpectrum {
  std::vector<double> frequencies_hz;
  std::vector<double> psd;
  SpectrumMeta meta;
};

void validate(const PowerSpectrum& sp);

// Welch estimate on the grid k*fs/segment_length, k = 1..segment_length/2.
// Throws TooShort when the record holds less than one segment.
PowerSpectrum estimate_pds(const TimeSeries& ts, const WelchConfig& cfg);

// Keeps only bins with f_lo <= f <= f_hi; at least 2 must survive.
PowerSpectrum restrict_band(const PowerSpectrum& sp, double f_lo_hz,
                            double f_hi_hz);

// log10 of the psd at f, interpolated linearly in (log10 f, log10 S)
// between the bracketing bins. Exact on bin hits and on power-law segments.
// Throws NonpositivePsd when a bracketing psd value is zero.
double log_value_at(const PowerSpectrum& sp, double f_hz);

// Decimates onto logarithmically equal bins: geometric-mean frequency,
// arithmetic-mean psd per bin. Optional; the fingerprint pipeline does not
// smooth by default.
PowerSpectrum smooth_log(const PowerSpectrum& sp, int points_per_decade);

}  // namespace fes
