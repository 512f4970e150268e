#include "fes/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fes/errors.hpp"
#include "fft.hpp"
#include "json_util.hpp"

namespace fes {

void validate(const SpectrumSpec& spec) {
  if (spec.bands.empty())
    raise(Errc::invalid_spec, "spectrum spec needs at least one band");
  if (!(spec.amplitude_at_f_lo > 0.0) || !std::isfinite(spec.amplitude_at_f_lo))
    raise(Errc::invalid_spec, "amplitude_at_f_lo must be positive and finite");
  for (std::size_t i = 0; i < spec.bands.size(); ++i) {
    const SpectrumBand& b = spec.bands[i];
    if (!(b.f_lo_hz > 0.0) || !(b.f_hi_hz > b.f_lo_hz))
      raise(Errc::invalid_spec,
            "band " + std::to_string(i) + " edges must satisfy 0 < f_lo < f_hi");
    if (!std::isfinite(b.exponent))
      raise(Errc::invalid_spec,
            "band " + std::to_string(i) + " exponent must be finite");
    if (i > 0 && spec.bands[i - 1].f_hi_hz != b.f_lo_hz)
      raise(Errc::invalid_spec,
            "bands must be contiguous: band " + std::to_string(i) +
                " does not start where band " + std::to_string(i - 1) +
                " ends");
  }
}

namespace {

// Piecewise-linear representation of log10 S_target over log10 f.
struct TargetDensity {
  std::vector<double> log_edges;  // band start edges, log10
  std::vector<double> base;       // log10 density at each band start
  std::vector<double> exponent;
  double log_f_min, log_f_max;
  double value_min, value_max;  // boundary values, held outside the range

  explicit TargetDensity(const SpectrumSpec& spec) {
    const double log_amp = std::log10(spec.amplitude_at_f_lo);
    double carry = log_amp;
    for (const SpectrumBand& b : spec.bands) {
      const double lo = std::log10(b.f_lo_hz);
      const double hi = std::log10(b.f_hi_hz);
      log_edges.push_back(lo);
      base.push_back(spec.continuity ? carry : log_amp);
      exponent.push_back(b.exponent);
      carry = base.back() + b.exponent * (hi - lo);
    }
    log_f_min = std::log10(spec.bands.front().f_lo_hz);
    log_f_max = std::log10(spec.bands.back().f_hi_hz);
    value_min = base.front();
    value_max = carry;
  }

  double eval_log(double log_f) const {
    if (log_f <= log_f_min) return value_min;
    if (log_f >= log_f_max) return value_max;
    auto it = std::upper_bound(log_edges.begin(), log_edges.end(), log_f);
    const auto i = static_cast<std::size_t>(it - log_edges.begin()) - 1;
    return base[i] + exponent[i] * (log_f - log_edges[i]);
  }
};

// Deterministic standard-normal pairs: Box-Muller over mt19937_64, no
// implementation-defined distribution adapters involved.
class NormalPairSource {
 public:
  explicit NormalPairSource(std::uint64_t seed) : rng_(seed) {}

  std::pair<double, double> next() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * kScale;
    const double u2 = static_cast<double>(rng_() >> 11) * kScale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

double log10_target_density(const SpectrumSpec& spec, double f_hz) {
  validate(spec);
  if (!(f_hz > 0.0))
    raise(Errc::invalid_argument, "frequency must be positive");
  return TargetDensity(spec).eval_log(std::log10(f_hz));
}

TimeSeries synthesize(const SpectrumSpec& spec, std::size_t n_samples,
                      double sample_rate_hz, std::uint64_t seed) {
  validate(spec);
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
    raise(Errc::invalid_rate, "sample rate must be positive");
  if (n_samples < 1024)
    raise(Errc::invalid_spec, "need n_samples >= 1024, got " +
                                  std::to_string(n_samples));
  const double nyquist = sample_rate_hz / 2.0;
  if (spec.bands.back().f_hi_hz > nyquist)
    raise(Errc::band_exceeds_nyquist,
          "spec reaches " + std::to_string(spec.bands.back().f_hi_hz) +
              " Hz, above the Nyquist frequency " + std::to_string(nyquist));

  const TargetDensity target(spec);
  const auto n = n_samples;
  const std::size_t n_half = n / 2;
  std::vector<std::complex<double>> coeffs(n_half + 1);
  coeffs[0] = 0.0;  // no DC: the classical signal is not a fluctuation

  NormalPairSource normals(seed);
  const double fs_over_n = sample_rate_hz / static_cast<double>(n);
  const double base_scale =
      sample_rate_hz * static_cast<double>(n) / 2.0;
  for (std::size_t k = 1; k <= n_half; ++k) {
    const double f = static_cast<double>(k) * fs_over_n;
    const double density = std::pow(10.0, target.eval_log(std::log10(f)));
    const auto [a, b] = normals.next();
    if (2 * k == n) {
      // Nyquist coefficient of an even-length real signal is real.
      coeffs[k] = a * std::sqrt(density * base_scale);
    } else {
      const double scale = std::sqrt(density * base_scale / 2.0);
      coeffs[k] = std::complex<double>(a * scale, b * scale);
    }
  }

  std::vector<double> samples(n);
  detail::InverseRealFft fft(n);
  fft.inverse(coeffs, samples);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : samples) v *= inv_n;

  TimeSeries ts;
  ts.samples = std::move(samples);
  ts.sample_rate_hz = sample_rate_hz;
  ts.label = "synth-" + std::to_string(seed);
  ts.source = "synth(n=" + std::to_string(n) +
              ",fs=" + std::to_string(sample_rate_hz) +
              ",seed=" + std::to_string(seed) + ")";
  return ts;
}

SlopeProfile expected_profile(const SpectrumSpec& spec, const BandPartition& p,
                              std::string label) {
  validate(spec);
  if (p.f_lo_hz < spec.bands.front().f_lo_hz ||
      p.f_hi_hz > spec.bands.back().f_hi_hz)
    raise(Errc::out_of_range,
          "partition [" + std::to_string(p.f_lo_hz) + ", " +
              std::to_string(p.f_hi_hz) + "] Hz exceeds the spec's range");

  const TargetDensity target(spec);
  SlopeProfile profile;
  profile.partition = p;
  profile.source_label = std::move(label);
  std::vector<double> values(p.edges.size());
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    values[i] = target.eval_log(std::log10(p.edges[i]));
  profile.local_slopes.resize(static_cast<std::size_t>(p.n_bands));
  for (std::size_t i = 0; i < profile.local_slopes.size(); ++i)
    profile.local_slopes[i] =
        (values[i + 1] - values[i]) /
        (std::log10(p.edges[i + 1]) - std::log10(p.edges[i]));
  profile.global_slope = (values.back() - values.front()) /
                         (std::log10(p.f_hi_hz) - std::log10(p.f_lo_hz));
  return profile;
}

Fingerprint expected_fingerprint(const SpectrumSpec& spec,
                                 const BandPartition& p, FingerprintKind kind,
                                 const SpectrumSpec* reference_spec,
                                 double tolerance) {
  if (kind == FingerprintKind::binary)
    return binary_fingerprint(expected_profile(spec, p));
  if (reference_spec == nullptr)
    raise(Errc::invalid_argument,
          "ternary expected fingerprint needs a reference spec");
  return ternary_fingerprint(expected_profile(spec, p, "spec"),
                             expected_profile(*reference_spec, p, "reference-spec"),
                             tolerance);
}

std::string spectrum_spec_to_json(const SpectrumSpec& spec) {
  validate(spec);
  detail::json j;
  j["schema_version"] = 1;
  detail::json bands = detail::json::array();
  for (const SpectrumBand& b : spec.bands) {
    detail::json jb;
    jb["f_lo_hz"] = b.f_lo_hz;
    jb["f_hi_hz"] = b.f_hi_hz;
    jb["exponent"] = b.exponent;
    bands.push_back(std::move(jb));
  }
  j["bands"] = std::move(bands);
  j["amplitude_at_f_lo"] = spec.amplitude_at_f_lo;
  j["continuity"] = spec.continuity;
  return j.dump(2) + "\n";
}

SpectrumSpec spectrum_spec_from_json(const std::string& text) {
  const detail::json j = detail::parse_json(text, "spectrum spec");
  detail::check_schema_version(j, 1, "spectrum spec");
  SpectrumSpec spec;
  const detail::json& bands = detail::require(j, "bands", "spectrum spec");
  if (!bands.is_array())
    raise(Errc::parse_error, "spectrum spec bands must be an array");
  for (const detail::json& jb : bands) {
    SpectrumBand b;
    b.f_lo_hz = detail::require(jb, "f_lo_hz", "spec band").get<double>();
    b.f_hi_hz = detail::require(jb, "f_hi_hz", "spec band").get<double>();
    b.exponent = detail::require(jb, "exponent", "spec band").get<double>();
    spec.bands.push_back(b);
  }
  spec.amplitude_at_f_lo =
      detail::require(j, "amplitude_at_f_lo", "spectrum spec").get<double>();
  spec.continuity =
      detail::require(j, "continuity", "spectrum spec").get<bool>();
  try {
    validate(spec);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid spectrum spec: ") + e.what());
  }
  return spec;
}

}  // namespace fes
