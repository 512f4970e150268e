#include "fes/pipeline.hpp"

#include <cmath>

#include "fes/errors.hpp"
#include "json_util.hpp"

namespace fes {

void validate(const PipelineConfig& cfg) {
  validate(cfg.welch);
  if (!(cfg.f_lo_hz > 0.0) || !(cfg.f_lo_hz < cfg.f_hi_hz) ||
      !std::isfinite(cfg.f_hi_hz))
    raise(Errc::invalid_band, "analysis band needs 0 < f_lo < f_hi, got [" +
                                  std::to_string(cfg.f_lo_hz) + ", " +
                                  std::to_string(cfg.f_hi_hz) + "]");
  if (cfg.n_bands < 1)
    raise(Errc::invalid_band,
          "n_bands must be >= 1, got " + std::to_string(cfg.n_bands));
  if (!(cfg.tolerance >= 0.0) || !std::isfinite(cfg.tolerance))
    raise(Errc::invalid_config, "tolerance must be >= 0");
}

void validate_against(const PipelineConfig& cfg, const TimeSeries& ts) {
  validate(cfg);
  validate(ts);
  const double nyquist = ts.sample_rate_hz / 2.0;
  if (cfg.f_hi_hz > nyquist)
    raise(Errc::invalid_band,
          "band upper edge " + std::to_string(cfg.f_hi_hz) +
              " Hz exceeds the Nyquist frequency " + std::to_string(nyquist) +
              " Hz");
  const double first_bin =
      ts.sample_rate_hz / static_cast<double>(cfg.welch.segment_length);
  if (cfg.f_lo_hz < first_bin)
    raise(Errc::invalid_band,
          "band lower edge " + std::to_string(cfg.f_lo_hz) +
              " Hz lies below the first Welch bin (" +
              std::to_string(first_bin) + " Hz); increase segment_length");
}

BandPartition partition_of(const PipelineConfig& cfg) {
  return make_partition(cfg.f_lo_hz, cfg.f_hi_hz, cfg.n_bands);
}

std::string pipeline_config_to_json(const PipelineConfig& cfg) {
  validate(cfg);
  detail::json j;
  j["schema_version"] = 1;
  detail::json w;
  w["segment_length"] = cfg.welch.segment_length;
  w["overlap_fraction"] = cfg.welch.overlap_fraction;
  w["window"] = to_string(cfg.welch.window);
  w["per_segment_detrend"] = to_string(cfg.welch.per_segment_detrend);
  j["welch"] = std::move(w);
  detail::json band;
  band["f_lo_hz"] = cfg.f_lo_hz;
  band["f_hi_hz"] = cfg.f_hi_hz;
  j["band"] = std::move(band);
  j["n_bands"] = cfg.n_bands;
  j["tolerance"] = cfg.tolerance;
  j["detrend_mode"] = to_string(cfg.detrend);
  if (cfg.reference_label)
    j["reference_label"] = *cfg.reference_label;
  else
    j["reference_label"] = nullptr;
  return j.dump(2) + "\n";
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
  const detail::json j = detail::parse_json(text, "pipeline config");
  detail::check_schema_version(j, 1, "pipeline config");
  PipelineConfig cfg;
  const detail::json& w = detail::require(j, "welch", "pipeline config");
  cfg.welch.segment_length =
      detail::require(w, "segment_length", "welch config").get<int>();
  cfg.welch.overlap_fraction =
      detail::require(w, "overlap_fraction", "welch config").get<double>();
  cfg.welch.window = window_from_string(
      detail::require(w, "window", "welch config").get<std::string>());
  cfg.welch.per_segment_detrend = segment_detrend_from_string(
      detail::require(w, "per_segment_detrend", "welch config")
          .get<std::string>());
  const detail::json& band = detail::require(j, "band", "pipeline config");
  cfg.f_lo_hz = detail::require(band, "f_lo_hz", "band").get<double>();
  cfg.f_hi_hz = detail::require(band, "f_hi_hz", "band").get<double>();
  cfg.n_bands = detail::require(j, "n_bands", "pipeline config").get<int>();
  cfg.tolerance = detail::require(j, "tolerance", "pipeline config").get<double>();
  cfg.detrend = detrend_mode_from_string(
      detail::require(j, "detrend_mode", "pipeline config").get<std::string>());
  const detail::json& ref = detail::require(j, "reference_label", "pipeline config");
  if (!ref.is_null()) cfg.reference_label = ref.get<std::string>();
  try {
    validate(cfg);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid pipeline config: ") + e.what());
  }
  return cfg;
}

PowerSpectrum compute_pds(const TimeSeries& ts, const PipelineConfig& cfg) {
  validate_against(cfg, ts);
  return estimate_pds(detrend(ts, cfg.detrend), cfg.welch);
}

SlopeProfile compute_profile(const TimeSeries& ts, const PipelineConfig& cfg) {
  return local_slopes(compute_pds(ts, cfg), partition_of(cfg));
}

Fingerprint compute_binary_fingerprint(const TimeSeries& ts,
                                       const PipelineConfig& cfg) {
  return binary_fingerprint(compute_profile(ts, cfg));
}

Fingerprint compute_ternary_fingerprint(const TimeSeries& ts,
                                        const SlopeProfile& reference,
                                        const PipelineConfig& cfg) {
  return ternary_fingerprint(compute_profile(ts, cfg), reference,
                             cfg.tolerance);
}

}  // namespace fes
