#pragma once

#include <span>
#include <vector>

#include "fes/fingerprint.hpp"

namespace fes {

// Positionwise agreement of two comparable fingerprints.
struct SimilarityReport {
  int matches{0};
  int total{0};
  double similarity{0.0};  // matches / total
  std::vector<bool> per_position;
};

// Requires equal kind, identical partitions and, for ternary, equal
// slope tolerance.
SimilarityReport similarity(const Fingerprint& a, const Fingerprint& b);

// Mean pairwise similarity over all unordered pairs; needs >= 2
// fingerprints, all pairwise comparable.
double reproducibility(std::span<const Fingerprint> fingerprints);

enum class EntropyPooling {
  pooled,        // one symbol distribution over all positions (default)
  per_position,  // per-position entropies, averaged
};

// Empirical Shannon entropy in bits per symbol. Bounded by log2(2) for
// binary and log2(3) for ternary ensembles. Inputs must share kind and
// n_bands.
double empirical_entropy(std::span<const Fingerprint> fingerprints,
                         EntropyPooling pooling = EntropyPooling::pooled);

}  // namespace fes
