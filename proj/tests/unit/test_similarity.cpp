#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fes/errors.hpp"
#include "fes/similarity.hpp"

using namespace fes;

namespace {

Fingerprint fp_with(std::vector<int> symbols, FingerprintKind kind,
                    double tolerance = 0.1, std::string label = "x") {
  Fingerprint fp;
  fp.kind = kind;
  fp.partition = make_partition(10.0, 1000.0, static_cast<int>(symbols.size()));
  fp.symbols = std::move(symbols);
  fp.slope_tolerance = kind == FingerprintKind::binary ? 0.0 : tolerance;
  if (kind == FingerprintKind::ternary) fp.reference_label = "ref";
  fp.source_label = std::move(label);
  fp.global_slope = -1.0;
  fp.local_slopes.assign(fp.symbols.size(), -1.0);
  return fp;
}

}  // namespace

TEST_CASE("similarity counts exact positional matches") {
  const auto a = fp_with({-1, +1, -1, +1, +1}, FingerprintKind::binary);
  SUBCASE("identical pair") {
    const SimilarityReport r = similarity(a, a);
    CHECK(r.matches == 5);
    CHECK(r.total == 5);
    CHECK(r.similarity == 1.0);
  }
  SUBCASE("full complement") {
    const auto b = fp_with({+1, -1, +1, -1, -1}, FingerprintKind::binary);
    const SimilarityReport r = similarity(a, b);
    CHECK(r.matches == 0);
    CHECK(r.similarity == 0.0);
  }
  SUBCASE("one mismatch in five") {
    const auto c = fp_with({+1, -1, 0, +1, +1}, FingerprintKind::ternary);
    const auto d = fp_with({+1, -1, 0, -1, +1}, FingerprintKind::ternary);
    const SimilarityReport r = similarity(c, d);
    CHECK(r.matches == 4);
    CHECK(r.similarity == 0.8);
    CHECK(r.per_position ==
          std::vector<bool>{true, true, true, false, true});
  }
}

TEST_CASE("similarity is symmetric and equals 1 - mismatch fraction") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> s1(6), s2(6);
    for (int i = 0; i < 6; ++i) {
      s1[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 3) - 1;
      s2[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 3) - 1;
    }
    const auto a = fp_with(s1, FingerprintKind::ternary);
    const auto b = fp_with(s2, FingerprintKind::ternary);
    const SimilarityReport ab = similarity(a, b);
    const SimilarityReport ba = similarity(b, a);
    CHECK(ab.similarity == ba.similarity);
    int mismatches = 0;
    for (std::size_t i = 0; i < s1.size(); ++i)
      if (s1[i] != s2[i]) ++mismatches;
    // matches/total exactly; the complement form only up to one rounding.
    CHECK(ab.similarity ==
          static_cast<double>(6 - mismatches) / static_cast<double>(6));
    CHECK(std::abs(ab.similarity -
                   (1.0 - static_cast<double>(mismatches) / 6.0)) <= 1e-15);
  }
}

TEST_CASE("similarity guards comparability") {
  const auto bin = fp_with({-1, +1}, FingerprintKind::binary);
  const auto ter = fp_with({-1, +1}, FingerprintKind::ternary);
  try {
    similarity(bin, ter);
    FAIL("expected KindMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kind_mismatch);
  }

  auto other = fp_with({-1, +1}, FingerprintKind::binary);
  other.partition = make_partition(10.0, 2000.0, 2);
  try {
    similarity(bin, other);
    FAIL("expected PartitionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::partition_mismatch);
  }

  const auto t1 = fp_with({-1, +1}, FingerprintKind::ternary, 0.1);
  const auto t2 = fp_with({-1, +1}, FingerprintKind::ternary, 0.2);
  try {
    similarity(t1, t2);
    FAIL("expected ToleranceMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::tolerance_mismatch);
  }
}

TEST_CASE("reproducibility is the mean pairwise similarity") {
  const auto a = fp_with({-1, +1, -1, +1, +1}, FingerprintKind::binary, 0, "a");
  SUBCASE("two identical fingerprints") {
    const Fingerprint fps[] = {a, a};
    CHECK(reproducibility(fps) == 1.0);
  }
  SUBCASE("three fingerprints with pairwise {1.0, 0.8, 0.8}") {
    auto b = a;
    b.symbols[0] = +1;  // one of five differs
    const Fingerprint fps[] = {a, a, b};
    CHECK(std::abs(reproducibility(fps) - (1.0 + 0.8 + 0.8) / 3.0) <= 1e-12);
  }
  SUBCASE("fewer than two is an error") {
    const Fingerprint fps[] = {a};
    try {
      reproducibility(fps);
      FAIL("expected TooFew");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::too_few);
    }
  }
}

TEST_CASE("empirical entropy of degenerate and uniform ensembles") {
  SUBCASE("all symbols equal gives zero bits") {
    const auto a = fp_with({+1, +1, +1, +1}, FingerprintKind::binary);
    const Fingerprint fps[] = {a, a};
    CHECK(empirical_entropy(fps) == 0.0);
  }
  SUBCASE("balanced binary gives one bit") {
    const auto a = fp_with({+1, -1, +1, -1}, FingerprintKind::binary);
    const Fingerprint fps[] = {a};
    CHECK(empirical_entropy(fps) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("uniform ternary gives log2(3) bits") {
    const auto a = fp_with({-1, 0, +1}, FingerprintKind::ternary);
    const Fingerprint fps[] = {a, a, a};
    CHECK(empirical_entropy(fps) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  }
  SUBCASE("empty ensemble is an error") {
    try {
      empirical_entropy({});
      FAIL("expected TooFew");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::too_few);
    }
  }
}

TEST_CASE("entropy respects the alphabet bounds") {
  std::mt19937_64 rng(31);
  std::vector<Fingerprint> bins, ters;
  for (int i = 0; i < 50; ++i) {
    std::vector<int> b(5), t(5);
    for (int j = 0; j < 5; ++j) {
      b[static_cast<std::size_t>(j)] = rng() % 2 == 0 ? -1 : +1;
      t[static_cast<std::size_t>(j)] = static_cast<int>(rng() % 3) - 1;
    }
    bins.push_back(fp_with(b, FingerprintKind::binary));
    ters.push_back(fp_with(t, FingerprintKind::ternary));
  }
  CHECK(empirical_entropy(bins) <= 1.0);
  CHECK(empirical_entropy(ters) <= std::log2(3.0));
  CHECK(empirical_entropy(bins, EntropyPooling::per_position) <= 1.0);
  CHECK(empirical_entropy(ters, EntropyPooling::per_position) <=
        std::log2(3.0));

  // A ternary ensemble without zeros obeys the binary bound.
  std::vector<Fingerprint> no_zero;
  for (int i = 0; i < 50; ++i) {
    std::vector<int> t(5);
    for (int j = 0; j < 5; ++j)
      t[static_cast<std::size_t>(j)] = rng() % 2 == 0 ? -1 : +1;
    no_zero.push_back(fp_with(t, FingerprintKind::ternary));
  }
  CHECK(empirical_entropy(no_zero) <= 1.0);
}

TEST_CASE("entropy rejects mixed ensembles") {
  const auto bin = fp_with({-1, +1}, FingerprintKind::binary);
  const auto ter = fp_with({-1, +1}, FingerprintKind::ternary);
  const Fingerprint mixed[] = {bin, ter};
  CHECK_THROWS_AS(empirical_entropy(mixed), Error);
  const auto narrow = fp_with({-1, +1, -1}, FingerprintKind::binary);
  const Fingerprint widths[] = {bin, narrow};
  CHECK_THROWS_AS(empirical_entropy(widths), Error);
}

TEST_CASE("per-position entropy averages positionwise distributions") {
  // Position 0 alternates (1 bit); position 1 is constant (0 bits).
  const auto a = fp_with({+1, +1}, FingerprintKind::binary, 0, "a");
  const auto b = fp_with({-1, +1}, FingerprintKind::binary, 0, "b");
  const Fingerprint fps[] = {a, b};
  CHECK(empirical_entropy(fps, EntropyPooling::per_position) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Pooled view: 3 of 4 symbols are +1.
  const double p = 0.75;
  const double pooled = -(p * std::log2(p) + 0.25 * std::log2(0.25));
  CHECK(empirical_entropy(fps) == doctest::Approx(pooled).epsilon(1e-12));
}
