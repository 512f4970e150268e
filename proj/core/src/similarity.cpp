#include "fes/similarity.hpp"

#include <array>
#include <cmath>

#include "fes/errors.hpp"

namespace fes {

namespace {

void check_comparable(const Fingerprint& a, const Fingerprint& b) {
  if (a.kind != b.kind)
    raise(Errc::kind_mismatch, "cannot compare binary against ternary");
  if (!(a.partition == b.partition))
    raise(Errc::partition_mismatch,
          "fingerprints use different partitions");
  if (a.kind == FingerprintKind::ternary &&
      a.slope_tolerance != b.slope_tolerance)
    raise(Errc::tolerance_mismatch,
          "ternary fingerprints use different slope tolerances");
}

double entropy_bits(const std::array<std::size_t, 3>& counts) {
  std::size_t total = counts[0] + counts[1] + counts[2];
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;  // 0 * log 0 = 0
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

SimilarityReport similarity(const Fingerprint& a, const Fingerprint& b) {
  validate(a);
  validate(b);
  check_comparable(a, b);
  SimilarityReport report;
  report.total = static_cast<int>(a.symbols.size());
  report.per_position.reserve(a.symbols.size());
  for (std::size_t i = 0; i < a.symbols.size(); ++i) {
    const bool match = a.symbols[i] == b.symbols[i];
    report.per_position.push_back(match);
    if (match) ++report.matches;
  }
  report.similarity =
      static_cast<double>(report.matches) / static_cast<double>(report.total);
  return report;
}

double reproducibility(std::span<const Fingerprint> fingerprints) {
  if (fingerprints.size() < 2)
    raise(Errc::too_few, "reproducibility needs at least 2 fingerprints");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < fingerprints.size(); ++i)
    for (std::size_t j = i + 1; j < fingerprints.size(); ++j) {
      sum += similarity(fingerprints[i], fingerprints[j]).similarity;
      ++pairs;
    }
  return sum / static_cast<double>(pairs);
}

double empirical_entropy(std::span<const Fingerprint> fingerprints,
                         EntropyPooling pooling) {
  if (fingerprints.empty())
    raise(Errc::too_few, "entropy needs at least 1 fingerprint");
  const FingerprintKind kind = fingerprints.front().kind;
  const int n_bands = fingerprints.front().partition.n_bands;
  for (const Fingerprint& fp : fingerprints) {
    validate(fp);
    if (fp.kind != kind)
      raise(Errc::kind_mismatch, "mixed fingerprint kinds in ensemble");
    if (fp.partition.n_bands != n_bands)
      raise(Errc::partition_mismatch, "mixed n_bands in ensemble");
  }

  const auto bucket = [](int symbol) {
    return static_cast<std::size_t>(symbol + 1);  // -1/0/+1 -> 0/1/2
  };
  if (pooling == EntropyPooling::pooled) {
    std::array<std::size_t, 3> counts{0, 0, 0};
    for (const Fingerprint& fp : fingerprints)
      for (int s : fp.symbols) ++counts[bucket(s)];
    return entropy_bits(counts);
  }
  double sum = 0.0;
  for (int pos = 0; pos < n_bands; ++pos) {
    std::array<std::size_t, 3> counts{0, 0, 0};
    for (const Fingerprint& fp : fingerprints)
      ++counts[bucket(fp.symbols[static_cast<std::size_t>(pos)])];
    sum += entropy_bits(counts);
  }
  return sum / n_bands;
}

}  // namespace fes
