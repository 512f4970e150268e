#include "fes/welch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "fes/errors.hpp"
#include "fft.hpp"

namespace fes {

const char* to_string(Window w) noexcept {
  switch (w) {
    case Window::hann: return "hann";
    case Window::hamming: return "hamming";
    case Window::rectangular: return "rectangular";
  }
  return "hann";
}

Window window_from_string(const std::string& name) {
  if (name == "hann") return Window::hann;
  if (name == "hamming") return Window::hamming;
  if (name == "rectangular") return Window::rectangular;
  raise(Errc::parse_error, "unknown window '" + name + "'");
}

const char* to_string(SegmentDetrend d) noexcept {
  switch (d) {
    case SegmentDetrend::none: return "none";
    case SegmentDetrend::mean: return "mean";
    case SegmentDetrend::linear: return "linear";
  }
  return "mean";
}

SegmentDetrend segment_detrend_from_string(const std::string& name) {
  if (name == "none") return SegmentDetrend::none;
  if (name == "mean") return SegmentDetrend::mean;
  if (name == "linear") return SegmentDetrend::linear;
  raise(Errc::parse_error, "unknown per-segment detrend '" + name + "'");
}

void validate(const WelchConfig& cfg) {
  if (cfg.segment_length < 16)
    raise(Errc::invalid_config, "segment_length must be >= 16, got " +
                                    std::to_string(cfg.segment_length));
  if (!std::has_single_bit(static_cast<unsigned>(cfg.segment_length)))
    raise(Errc::invalid_config, "segment_length must be a power of two, got " +
                                    std::to_string(cfg.segment_length));
  if (!(cfg.overlap_fraction >= 0.0) || !(cfg.overlap_fraction < 1.0))
    raise(Errc::invalid_config, "overlap_fraction must lie in [0, 1), got " +
                                    std::to_string(cfg.overlap_fraction));
}

int welch_segment_step(const WelchConfig& cfg) {
  const int overlap = static_cast<int>(
      std::floor(cfg.overlap_fraction * cfg.segment_length));
  return cfg.segment_length - overlap;
}

int welch_segment_count(const WelchConfig& cfg, std::size_t n_samples) {
  if (n_samples < static_cast<std::size_t>(cfg.segment_length)) return 0;
  const std::size_t step = static_cast<std::size_t>(welch_segment_step(cfg));
  return static_cast<int>(
      (n_samples - static_cast<std::size_t>(cfg.segment_length)) / step + 1);
}

void validate(const PowerSpectrum& sp) {
  if (sp.frequencies_hz.size() != sp.psd.size())
    raise(Errc::invalid_argument, "frequency/psd length mismatch");
  if (sp.frequencies_hz.size() < 2)
    raise(Errc::invalid_argument, "spectrum needs at least 2 bins");
  if (!(sp.frequencies_hz.front() > 0.0))
    raise(Errc::invalid_argument, "first frequency must be > 0 (no DC bin)");
  for (std::size_t i = 1; i < sp.frequencies_hz.size(); ++i)
    if (!(sp.frequencies_hz[i] > sp.frequencies_hz[i - 1]))
      raise(Errc::invalid_argument,
            "frequencies must be strictly increasing at index " +
                std::to_string(i));
  for (std::size_t i = 0; i < sp.psd.size(); ++i)
    if (!std::isfinite(sp.psd[i]) || sp.psd[i] < 0.0)
      raise(Errc::invalid_argument,
            "psd must be finite and >= 0 at index " + std::to_string(i));
}

namespace {

std::vector<double> make_window(Window w, int length) {
  std::vector<double> win(static_cast<std::size_t>(length), 1.0);
  const double step = 2.0 * std::numbers::pi / length;  // periodic form
  switch (w) {
    case Window::hann:
      for (int i = 0; i < length; ++i)
        win[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(step * i);
      break;
    case Window::hamming:
      for (int i = 0; i < length; ++i)
        win[static_cast<std::size_t>(i)] = 0.54 - 0.46 * std::cos(step * i);
      break;
    case Window::rectangular:
      break;
  }
  return win;
}

void detrend_segment(std::vector<double>& seg, SegmentDetrend mode) {
  const auto n = static_cast<double>(seg.size());
  switch (mode) {
    case SegmentDetrend::none:
      break;
    case SegmentDetrend::mean: {
      double sum = 0.0;
      for (double v : seg) sum += v;
      const double m = sum / n;
      for (double& v : seg) v -= m;
      break;
    }
    case SegmentDetrend::linear: {
      const double center = (n - 1.0) / 2.0;
      const double t2 = n * (n * n - 1.0) / 12.0;
      double st = 0.0, s = 0.0;
      for (std::size_t i = 0; i < seg.size(); ++i) {
        s += seg[i];
        st += (static_cast<double>(i) - center) * seg[i];
      }
      const double slope = st / t2;
      const double intercept = s / n;
      for (std::size_t i = 0; i < seg.size(); ++i)
        seg[i] -= intercept + slope * (static_cast<double>(i) - center);
      break;
    }
  }
}

}  // namespace

PowerSpectrum estimate_pds(const TimeSeries& ts, const WelchConfig& cfg) {
  validate(cfg);
  validate(ts);
  const auto length = static_cast<std::size_t>(cfg.segment_length);
  if (ts.samples.size() < length)
    raise(Errc::too_short,
          "record of " + std::to_string(ts.samples.size()) +
              " samples is shorter than one segment (" +
              std::to_string(cfg.segment_length) + ")");

  const int n_segments = welch_segment_count(cfg, ts.samples.size());
  const auto step = static_cast<std::size_t>(welch_segment_step(cfg));
  const std::vector<double> window = make_window(cfg.window, cfg.segment_length);
  double window_power = 0.0;  // sum of squared window samples
  for (double w : window) window_power += w * w;

  const std::size_t n_bins = length / 2;  // k = 1..L/2, DC dropped
  std::vector<double> accum(n_bins, 0.0);
  std::vector<double> segment(length);
  std::vector<std::complex<double>> coeffs(length / 2 + 1);
  detail::RealFft fft(length);

  for (int s = 0; s < n_segments; ++s) {
    const std::size_t offset = static_cast<std::size_t>(s) * step;
    std::copy_n(ts.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                length, segment.begin());
    detrend_segment(segment, cfg.per_segment_detrend);
    for (std::size_t i = 0; i < length; ++i) segment[i] *= window[i];
    fft.forward(segment, coeffs);
    for (std::size_t k = 1; k <= n_bins; ++k) accum[k - 1] += std::norm(coeffs[k]);
  }

  // One-sided normalization: scale so the trapezoidal integral over
  // frequency approximates the variance. All output bins carry the
  // one-sided factor 2, the Nyquist bin included; the resulting Parseval
  // error is O(1/segment_length) and keeps the grid uniformly flat for
  // white noise.
  const double scale =
      2.0 / (ts.sample_rate_hz * window_power * n_segments);
  PowerSpectrum sp;
  sp.frequencies_hz.resize(n_bins);
  sp.psd.resize(n_bins);
  for (std::size_t k = 1; k <= n_bins; ++k) {
    sp.frequencies_hz[k - 1] =
        static_cast<double>(k) * ts.sample_rate_hz / static_cast<double>(length);
    sp.psd[k - 1] = accum[k - 1] * scale;
  }
  sp.meta.welch = cfg;
  sp.meta.source_label = ts.label;
  validate(sp);
  return sp;
}

PowerSpectrum restrict_band(const PowerSpectrum& sp, double f_lo_hz,
                            double f_hi_hz) {
  validate(sp);
  if (!(f_lo_hz < f_hi_hz))
    raise(Errc::invalid_band, "need f_lo < f_hi, got [" +
                                  std::to_string(f_lo_hz) + ", " +
                                  std::to_string(f_hi_hz) + "]");
  PowerSpectrum out;
  out.meta = sp.meta;
  out.meta.band_lo_hz = f_lo_hz;
  out.meta.band_hi_hz = f_hi_hz;
  for (std::size_t i = 0; i < sp.frequencies_hz.size(); ++i) {
    const double f = sp.frequencies_hz[i];
    if (f >= f_lo_hz && f <= f_hi_hz) {
      out.frequencies_hz.push_back(f);
      out.psd.push_back(sp.psd[i]);
    }
  }
  if (out.frequencies_hz.size() < 2)
    raise(Errc::empty_band, "fewer than 2 bins inside [" +
                                std::to_string(f_lo_hz) + ", " +
                                std::to_string(f_hi_hz) + "] Hz");
  return out;
}

double log_value_at(const PowerSpectrum& sp, double f_hz) {
  validate(sp);
  const auto& freq = sp.frequencies_hz;
  if (!(f_hz >= freq.front()) || !(f_hz <= freq.back()))
    raise(Errc::out_of_range,
          std::to_string(f_hz) + " Hz outside spectrum range [" +
              std::to_string(freq.front()) + ", " +
              std::to_string(freq.back()) + "]");

  const auto it = std::lower_bound(freq.begin(), freq.end(), f_hz);
  const auto hi = static_cast<std::size_t>(it - freq.begin());
  const auto psd_at = [&](std::size_t i) {
    if (!(sp.psd[i] > 0.0))
      raise(Errc::nonpositive_psd,
            "psd is zero at bin " + std::to_string(i) + " (" +
                std::to_string(freq[i]) + " Hz); log slope undefined");
    return sp.psd[i];
  };
  if (freq[hi] == f_hz) return std::log10(psd_at(hi));

  const std::size_t lo = hi - 1;
  const double y0 = std::log10(psd_at(lo));
  const double y1 = std::log10(psd_at(hi));
  const double x0 = std::log10(freq[lo]);
  const double x1 = std::log10(freq[hi]);
  const double t = (std::log10(f_hz) - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

PowerSpectrum smooth_log(const PowerSpectrum& sp, int points_per_decade) {
  validate(sp);
  if (points_per_decade < 4)
    raise(Errc::invalid_config, "points_per_decade must be >= 4, got " +
                                    std::to_string(points_per_decade));
  const double lo = std::log10(sp.frequencies_hz.front());
  const double hi = std::log10(sp.frequencies_hz.back());
  const double decades = hi - lo;
  const auto n_bins = static_cast<std::size_t>(
      std::max<long>(1, std::lround(points_per_decade * decades)));
  const double width = (hi - lo) / static_cast<double>(n_bins);

  std::vector<double> sum_psd(n_bins, 0.0);
  std::vector<double> sum_logf(n_bins, 0.0);
  std::vector<std::size_t> count(n_bins, 0);
  for (std::size_t i = 0; i < sp.frequencies_hz.size(); ++i) {
    const double logf = std::log10(sp.frequencies_hz[i]);
    auto b = static_cast<std::size_t>((logf - lo) / width);
    if (b >= n_bins) b = n_bins - 1;
    sum_psd[b] += sp.psd[i];
    sum_logf[b] += logf;
    ++count[b];
  }

  PowerSpectrum out;
  out.meta = sp.meta;
  out.meta.smoothed_points_per_decade = points_per_decade;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    const double n = static_cast<double>(count[b]);
    out.frequencies_hz.push_back(std::pow(10.0, sum_logf[b] / n));
    out.psd.push_back(sum_psd[b] / n);
  }
  if (out.frequencies_hz.size() < 2)
    raise(Errc::empty_band, "smoothing left fewer than 2 bins");
  validate(out);
  return out;
}

}  // namespace fes
