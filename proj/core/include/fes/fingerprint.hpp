#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fes/welch.hpp"

namespace fes {

// The analysis band [f_lo, f_hi] split into n_bands logarithmically equal
// sub-bands. edges has n_bands+1 entries with edges.front() == f_lo and
// edges.back() == f_hi.
struct BandPartition {
  double f_lo_hz{0.0};
  double f_hi_hz{0.0};
  int n_bands{0};
  std::vector<double> edges;

  // Exact comparison: ternary encoding and similarity both require
  // identical partitions, not merely close ones.
  friend bool operator==(const BandPartition&, const BandPartition&) = default;
};

BandPartition make_partition(double f_lo_hz, double f_hi_hz, int n_bands);

// Global endpoint-chord slope plus per-sub-band chord slopes of one spectrum
// under one partition, in d log10 S / d log10 f units.
struct SlopeProfile {
  BandPartition partition;
  double global_slope{0.0};
  std::vector<double> local_slopes;
  std::string source_label;
};

void validate(const SlopeProfile& profile);

// Chord slope of the log-log spectrum between the band endpoints: the
// straight line connecting the two band-edge points. Not a least-squares
// fit.
double global_slope(const PowerSpectrum& sp, const BandPartition& p);

// Chord slope over each sub-band, by the same endpoint construction. The
// log-width-weighted mean of the local slopes telescopes to the global
// slope; with log-equal bands the plain mean does.
SlopeProfile local_slopes(const PowerSpectrum& sp, const BandPartition& p);

enum class FingerprintKind { binary, ternary };

const char* to_string(FingerprintKind kind) noexcept;
FingerprintKind fingerprint_kind_from_string(const std::string& name);

struct Fingerprint {
  FingerprintKind kind{FingerprintKind::binary};
  std::vector<int> symbols;  // over {-1,+1} (binary) or {-1,0,+1} (ternary)
  BandPartition partition;
  double slope_tolerance{0.0};                 // 0 for binary
  std::optional<std::string> reference_label;  // ternary only
  std::string source_label;
  // The profile the symbols were derived from, kept for provenance.
  double global_slope{0.0};
  std::vector<double> local_slopes;
};

void validate(const Fingerprint& fp);

// The slope profile carried inside a fingerprint.
SlopeProfile profile_of(const Fingerprint& fp);

// symbol[i] = -1 where the local slope is below the global slope, else +1
// (equality encodes +1).
Fingerprint binary_fingerprint(const SlopeProfile& profile);

// symbol[i] compares sample and reference local slopes in the same
// sub-band: 0 when |sample - reference| <= tolerance, otherwise the sign of
// the difference. Partitions must match exactly.
Fingerprint ternary_fingerprint(const SlopeProfile& sample,
                                const SlopeProfile& reference,
                                double tolerance);

// JSON schema: {kind, symbols, f_lo_hz, f_hi_hz, n_bands, slope_tolerance,
// reference_label, source_label, global_slope, local_slopes} plus
// schema_version. Symbols serialize as integers; round-trip is stable.
std::string fingerprint_to_json(const Fingerprint& fp);
Fingerprint fingerprint_from_json(const std::string& text);

void write_fingerprint(const Fingerprint& fp,
                       const std::filesystem::path& path);
Fingerprint read_fingerprint(const std::filesystem::path& path);

}  // namespace fes
