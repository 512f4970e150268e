#pragma once

#include <optional>
#include <string>

#include "fes/fingerprint.hpp"
#include "fes/time_series.hpp"
#include "fes/welch.hpp"

namespace fes {

// Every knob the end-to-end pipeline needs, bundled so one serialized
// config file reproduces a run. The analysis band is deliberately a
// required parameter; there is no sensible universal default.
struct PipelineConfig {
  WelchConfig welch{};
  double f_lo_hz{0.0};
  double f_hi_hz{0.0};
  int n_bands{5};
  double tolerance{0.1};  // ternary slope resolution, log-log slope units
  DetrendMode detrend{DetrendMode::mean};
  std::optional<std::string> reference_label;
};

void validate(const PipelineConfig& cfg);
// Checks the config against a concrete record (band vs Nyquist).
void validate_against(const PipelineConfig& cfg, const TimeSeries& ts);

BandPartition partition_of(const PipelineConfig& cfg);

// JSON round-trip, schema_version 1.
std::string pipeline_config_to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const std::string& text);

// Pipeline stages: detrend -> Welch -> slopes -> encode.
PowerSpectrum compute_pds(const TimeSeries& ts, const PipelineConfig& cfg);
SlopeProfile compute_profile(const TimeSeries& ts, const PipelineConfig& cfg);
Fingerprint compute_binary_fingerprint(const TimeSeries& ts,
                                       const PipelineConfig& cfg);
Fingerprint compute_ternary_fingerprint(const TimeSeries& ts,
                                        const SlopeProfile& reference,
                                        const PipelineConfig& cfg);

}  // namespace fes
