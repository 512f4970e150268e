#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fes/fingerprint.hpp"
#include "fes/time_series.hpp"

namespace fes {

// Ground-truth description of a piecewise power-law spectrum: contiguous
// frequency bands, each with one log-log exponent. amplitude_at_f_lo anchors
// the density at the first edge. With continuity (the default) the segments
// join continuously in log-log; otherwise each band restarts at the anchor
// amplitude.
struct SpectrumBand {
  double f_lo_hz{0.0};
  double f_hi_hz{0.0};
  double exponent{0.0};
};

struct SpectrumSpec {
  std::vector<SpectrumBand> bands;
  double amplitude_at_f_lo{1.0};
  bool continuity{true};
};

void validate(const SpectrumSpec& spec);

// log10 of the target density at f. Held constant at the boundary values
// outside the spec's range.
double log10_target_density(const SpectrumSpec& spec, double f_hz);

std::string spectrum_spec_to_json(const SpectrumSpec& spec);
SpectrumSpec spectrum_spec_from_json(const std::string& text);

// Gaussian record with the prescribed spectrum: each rFFT coefficient is a
// unit complex Gaussian scaled by sqrt(S_target(f) * fs * n / 2), DC zeroed,
// inverse-transformed to n real samples. Bit-reproducible for a given seed
// within one platform/build.
TimeSeries synthesize(const SpectrumSpec& spec, std::size_t n_samples,
                      double sample_rate_hz, std::uint64_t seed);

// Exact chord slopes of the ideal spectrum over partition p (closed form;
// no estimation involved).
SlopeProfile expected_profile(const SpectrumSpec& spec, const BandPartition& p,
                              std::string label = "spec");

// Encoder output on analytic profiles: the ground truth that estimated
// fingerprints converge to. Ternary kind requires reference_spec.
Fingerprint expected_fingerprint(const SpectrumSpec& spec,
                                 const BandPartition& p, FingerprintKind kind,
                                 const SpectrumSpec* reference_spec = nullptr,
                                 double tolerance = 0.0);

}  // namespace fes
