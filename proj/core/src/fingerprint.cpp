#include "fes/fingerprint.hpp"

#include <cmath>

#include "fes/errors.hpp"
#include "serialize_detail.hpp"

namespace fes {

BandPartition make_partition(double f_lo_hz, double f_hi_hz, int n_bands) {
  if (!(f_lo_hz > 0.0) || !(f_lo_hz < f_hi_hz) || !std::isfinite(f_hi_hz))
    raise(Errc::invalid_band, "need 0 < f_lo < f_hi, got [" +
                                  std::to_string(f_lo_hz) + ", " +
                                  std::to_string(f_hi_hz) + "]");
  if (n_bands < 1)
    raise(Errc::invalid_band,
          "n_bands must be >= 1, got " + std::to_string(n_bands));

  BandPartition p;
  p.f_lo_hz = f_lo_hz;
  p.f_hi_hz = f_hi_hz;
  p.n_bands = n_bands;
  p.edges.resize(static_cast<std::size_t>(n_bands) + 1);
  const double lo = std::log10(f_lo_hz);
  const double hi = std::log10(f_hi_hz);
  for (int i = 1; i < n_bands; ++i)
    p.edges[static_cast<std::size_t>(i)] =
        std::pow(10.0, lo + (hi - lo) * i / n_bands);
  p.edges.front() = f_lo_hz;  // endpoints exact, not rounded through pow
  p.edges.back() = f_hi_hz;
  for (std::size_t i = 1; i < p.edges.size(); ++i)
    if (!(p.edges[i] > p.edges[i - 1]))
      raise(Errc::invalid_band,
            "band too narrow to split into " + std::to_string(n_bands) +
                " log-equal sub-bands");
  return p;
}

void validate(const SlopeProfile& profile) {
  if (profile.partition.n_bands < 1 ||
      profile.partition.edges.size() !=
          static_cast<std::size_t>(profile.partition.n_bands) + 1)
    raise(Errc::invalid_argument, "profile has a malformed partition");
  if (profile.local_slopes.size() !=
      static_cast<std::size_t>(profile.partition.n_bands))
    raise(Errc::invalid_argument,
          "profile needs one local slope per sub-band");
  if (!std::isfinite(profile.global_slope))
    raise(Errc::invalid_argument, "global slope must be finite");
  for (double s : profile.local_slopes)
    if (!std::isfinite(s))
      raise(Errc::invalid_argument, "local slopes must be finite");
}

double global_slope(const PowerSpectrum& sp, const BandPartition& p) {
  const double v_lo = log_value_at(sp, p.f_lo_hz);
  const double v_hi = log_value_at(sp, p.f_hi_hz);
  return (v_hi - v_lo) / (std::log10(p.f_hi_hz) - std::log10(p.f_lo_hz));
}

SlopeProfile local_slopes(const PowerSpectrum& sp, const BandPartition& p) {
  SlopeProfile profile;
  profile.partition = p;
  profile.source_label = sp.meta.source_label;

  std::vector<double> log_values(p.edges.size());
  for (std::size_t i = 0; i < p.edges.size(); ++i)
    log_values[i] = log_value_at(sp, p.edges[i]);

  profile.local_slopes.resize(static_cast<std::size_t>(p.n_bands));
  for (std::size_t i = 0; i < profile.local_slopes.size(); ++i)
    profile.local_slopes[i] =
        (log_values[i + 1] - log_values[i]) /
        (std::log10(p.edges[i + 1]) - std::log10(p.edges[i]));
  profile.global_slope =
      (log_values.back() - log_values.front()) /
      (std::log10(p.f_hi_hz) - std::log10(p.f_lo_hz));
  return profile;
}

const char* to_string(FingerprintKind kind) noexcept {
  return kind == FingerprintKind::binary ? "binary" : "ternary";
}

FingerprintKind fingerprint_kind_from_string(const std::string& name) {
  if (name == "binary") return FingerprintKind::binary;
  if (name == "ternary") return FingerprintKind::ternary;
  raise(Errc::parse_error, "unknown fingerprint kind '" + name + "'");
}

void validate(const Fingerprint& fp) {
  if (fp.symbols.size() != static_cast<std::size_t>(fp.partition.n_bands))
    raise(Errc::invalid_argument, "need one symbol per sub-band");
  for (int s : fp.symbols) {
    if (s != -1 && s != 0 && s != 1)
      raise(Errc::invalid_argument, "symbols must be -1, 0 or +1");
    if (fp.kind == FingerprintKind::binary && s == 0)
      raise(Errc::invalid_argument, "binary fingerprints never contain 0");
  }
  if (fp.kind == FingerprintKind::ternary &&
      (!fp.reference_label || fp.reference_label->empty()))
    raise(Errc::invalid_argument,
          "ternary fingerprints need a non-empty reference label");
  if (!(fp.slope_tolerance >= 0.0))
    raise(Errc::invalid_argument, "slope tolerance must be >= 0");
  if (fp.local_slopes.size() != fp.symbols.size())
    raise(Errc::invalid_argument, "need one local slope per sub-band");
}

SlopeProfile profile_of(const Fingerprint& fp) {
  SlopeProfile profile;
  profile.partition = fp.partition;
  profile.global_slope = fp.global_slope;
  profile.local_slopes = fp.local_slopes;
  profile.source_label = fp.source_label;
  return profile;
}

Fingerprint binary_fingerprint(const SlopeProfile& profile) {
  validate(profile);
  Fingerprint fp;
  fp.kind = FingerprintKind::binary;
  fp.partition = profile.partition;
  fp.slope_tolerance = 0.0;
  fp.source_label = profile.source_label;
  fp.global_slope = profile.global_slope;
  fp.local_slopes = profile.local_slopes;
  fp.symbols.reserve(profile.local_slopes.size());
  // Below the global slope encodes -1; equality encodes +1.
  for (double local : profile.local_slopes)
    fp.symbols.push_back(local < profile.global_slope ? -1 : +1);
  return fp;
}

Fingerprint ternary_fingerprint(const SlopeProfile& sample,
                                const SlopeProfile& reference,
                                double tolerance) {
  validate(sample);
  validate(reference);
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance))
    raise(Errc::invalid_argument, "tolerance must be >= 0");
  if (!(sample.partition == reference.partition))
    raise(Errc::partition_mismatch,
          "sample and reference use different partitions");
  if (reference.source_label.empty())
    raise(Errc::invalid_argument,
          "reference profile needs a non-empty source label");

  Fingerprint fp;
  fp.kind = FingerprintKind::ternary;
  fp.partition = sample.partition;
  fp.slope_tolerance = tolerance;
  fp.reference_label = reference.source_label;
  fp.source_label = sample.source_label;
  fp.global_slope = sample.global_slope;
  fp.local_slopes = sample.local_slopes;
  fp.symbols.reserve(sample.local_slopes.size());
  for (std::size_t i = 0; i < sample.local_slopes.size(); ++i) {
    const double d = sample.local_slopes[i] - reference.local_slopes[i];
    int symbol = 0;
    if (d > tolerance) symbol = +1;
    else if (d < -tolerance) symbol = -1;
    fp.symbols.push_back(symbol);
  }
  return fp;
}

namespace detail {

json fingerprint_to_json_obj(const Fingerprint& fp) {
  validate(fp);
  json j;
  j["kind"] = to_string(fp.kind);
  j["symbols"] = fp.symbols;
  j["f_lo_hz"] = fp.partition.f_lo_hz;
  j["f_hi_hz"] = fp.partition.f_hi_hz;
  j["n_bands"] = fp.partition.n_bands;
  j["slope_tolerance"] = fp.slope_tolerance;
  if (fp.reference_label)
    j["reference_label"] = *fp.reference_label;
  else
    j["reference_label"] = nullptr;
  j["source_label"] = fp.source_label;
  j["global_slope"] = fp.global_slope;
  j["local_slopes"] = fp.local_slopes;
  return j;
}

Fingerprint fingerprint_from_json_obj(const json& j) {
  Fingerprint fp;
  fp.kind = fingerprint_kind_from_string(
      require(j, "kind", "fingerprint").get<std::string>());
  fp.partition =
      make_partition(require(j, "f_lo_hz", "fingerprint").get<double>(),
                     require(j, "f_hi_hz", "fingerprint").get<double>(),
                     require(j, "n_bands", "fingerprint").get<int>());
  fp.symbols = require(j, "symbols", "fingerprint").get<std::vector<int>>();
  fp.slope_tolerance =
      require(j, "slope_tolerance", "fingerprint").get<double>();
  const json& ref = require(j, "reference_label", "fingerprint");
  if (!ref.is_null()) fp.reference_label = ref.get<std::string>();
  fp.source_label =
      require(j, "source_label", "fingerprint").get<std::string>();
  fp.global_slope = require(j, "global_slope", "fingerprint").get<double>();
  fp.local_slopes =
      require(j, "local_slopes", "fingerprint").get<std::vector<double>>();
  try {
    validate(fp);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid fingerprint: ") + e.what());
  }
  return fp;
}

json profile_to_json_obj(const SlopeProfile& profile) {
  validate(profile);
  json j;
  j["f_lo_hz"] = profile.partition.f_lo_hz;
  j["f_hi_hz"] = profile.partition.f_hi_hz;
  j["n_bands"] = profile.partition.n_bands;
  j["global_slope"] = profile.global_slope;
  j["local_slopes"] = profile.local_slopes;
  j["source_label"] = profile.source_label;
  return j;
}

SlopeProfile profile_from_json_obj(const json& j) {
  SlopeProfile profile;
  profile.partition =
      make_partition(require(j, "f_lo_hz", "profile").get<double>(),
                     require(j, "f_hi_hz", "profile").get<double>(),
                     require(j, "n_bands", "profile").get<int>());
  profile.global_slope = require(j, "global_slope", "profile").get<double>();
  profile.local_slopes =
      require(j, "local_slopes", "profile").get<std::vector<double>>();
  profile.source_label =
      require(j, "source_label", "profile").get<std::string>();
  try {
    validate(profile);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid profile: ") + e.what());
  }
  return profile;
}

}  // namespace detail

std::string fingerprint_to_json(const Fingerprint& fp) {
  detail::json j = detail::fingerprint_to_json_obj(fp);
  j["schema_version"] = 1;
  return j.dump(2) + "\n";
}

Fingerprint fingerprint_from_json(const std::string& text) {
  const detail::json j = detail::parse_json(text, "fingerprint");
  detail::check_schema_version(j, 1, "fingerprint");
  return detail::fingerprint_from_json_obj(j);
}

void write_fingerprint(const Fingerprint& fp,
                       const std::filesystem::path& path) {
  detail::write_text_file(path, fingerprint_to_json(fp));
}

Fingerprint read_fingerprint(const std::filesystem::path& path) {
  return fingerprint_from_json(detail::read_text_file(path));
}

}  // namespace fes
