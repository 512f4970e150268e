#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fes/errors.hpp"
#include "fes/synth.hpp"
#include "fes/welch.hpp"
#include "test_support.hpp"

using namespace fes;

namespace {

SpectrumSpec single_band(double f_lo, double f_hi, double exponent,
                         double amplitude = 1e-4) {
  return SpectrumSpec{{{f_lo, f_hi, exponent}}, amplitude, true};
}

}  // namespace

TEST_CASE("synthesis is deterministic per seed") {
  const SpectrumSpec spec = single_band(10.0, 1000.0, -1.0);
  const TimeSeries a = synthesize(spec, 4096, 4000.0, 123);
  const TimeSeries b = synthesize(spec, 4096, 4000.0, 123);
  CHECK(a.samples == b.samples);
  const TimeSeries c = synthesize(spec, 4096, 4000.0, 124);
  CHECK(a.samples != c.samples);
}

TEST_CASE("flat spec produces a flat Welch spectrum") {
  const double fs = 4000.0;
  const SpectrumSpec spec = single_band(1.0, fs / 2.0, 0.0, 2e-3);
  const TimeSeries ts = synthesize(spec, 1 << 19, fs, 99);
  WelchConfig cfg;
  cfg.segment_length = 1024;
  const PowerSpectrum sp = estimate_pds(ts, cfg);
  double sum = 0.0;
  for (double p : sp.psd) sum += p;
  const double avg = sum / static_cast<double>(sp.psd.size());
  CHECK(avg == doctest::Approx(2e-3).epsilon(0.03));
}

TEST_CASE("1/f spec recovers a global slope of -1 through the pipeline") {
  const double fs = 8192.0;
  const SpectrumSpec spec = single_band(fs / 2048.0, fs / 2.0, -1.0);
  const TimeSeries ts = synthesize(spec, 1 << 19, fs, 7);
  WelchConfig cfg;
  cfg.segment_length = 2048;
  const PowerSpectrum sp = estimate_pds(ts, cfg);
  const BandPartition p = make_partition(fs / 1000.0, fs / 8.0, 5);
  CHECK(global_slope(sp, p) == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("synthesized variance matches the spectral integral") {
  const double fs = 10000.0;
  const SpectrumSpec spec{{{1.0, 100.0, -0.5}, {100.0, 5000.0, -1.5}}, 1e-3,
                          true};
  const std::size_t n = 1 << 18;
  const TimeSeries ts = synthesize(spec, n, fs, 2024);

  // Independent quadrature of S_target over (0, Nyquist]: dense grid,
  // trapezoid in linear frequency.
  const std::size_t grid = 200000;
  std::vector<double> freq(grid), dens(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    freq[i] = fs / 2.0 * static_cast<double>(i + 1) / static_cast<double>(grid);
    dens[i] = std::pow(10.0, log10_target_density(spec, freq[i]));
  }
  double integral = fes::test::trapezoid_integral(freq, dens);
  integral += dens.front() * freq.front();  // the (0, f_1] sliver
  CHECK(variance(ts.samples) == doctest::Approx(integral).epsilon(0.05));
}

TEST_CASE("target density is continuous and clamped outside the range") {
  const SpectrumSpec spec{{{10.0, 100.0, -0.5}, {100.0, 1000.0, -1.5}}, 1e-2,
                          true};
  // Continuity at the joint.
  const double below = log10_target_density(spec, 100.0 - 1e-9);
  const double above = log10_target_density(spec, 100.0 + 1e-9);
  CHECK(std::abs(below - above) < 1e-6);
  // Clamped at the boundary values.
  CHECK(log10_target_density(spec, 1.0) ==
        doctest::Approx(std::log10(1e-2)).epsilon(1e-12));
  CHECK(log10_target_density(spec, 5000.0) ==
        doctest::Approx(log10_target_density(spec, 1000.0)).epsilon(1e-12));

  // Without continuity each band restarts at the anchor amplitude.
  SpectrumSpec jumpy = spec;
  jumpy.continuity = false;
  CHECK(log10_target_density(jumpy, 100.0 + 1e-9) ==
        doctest::Approx(std::log10(1e-2)).epsilon(1e-6));
}

TEST_CASE("expected_profile of a single exponent is that exponent") {
  const SpectrumSpec spec = single_band(1.0, 10000.0, -2.0);
  const BandPartition p = make_partition(2.0, 8000.0, 5);
  const SlopeProfile prof = expected_profile(spec, p);
  for (double s : prof.local_slopes)
    CHECK(s == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(prof.global_slope == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("expected_profile telescopes over two equal log bands") {
  const SpectrumSpec spec{{{1.0, 100.0, -0.5}, {100.0, 10000.0, -1.5}}, 1.0,
                          true};
  const BandPartition p = make_partition(1.0, 10000.0, 2);
  const SlopeProfile prof = expected_profile(spec, p);
  CHECK(prof.local_slopes[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(prof.local_slopes[1] == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(prof.global_slope == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("expected_profile matches a dense-tabulation chord oracle") {
  // Five bands with distinct exponents; partition offset by half a band so
  // every chord crosses a joint.
  const SpectrumSpec spec{{{10.0, 40.0, -0.2},
                           {40.0, 160.0, -0.8},
                           {160.0, 640.0, -1.0},
                           {640.0, 2560.0, -1.4},
                           {2560.0, 10240.0, -2.1}},
                          1e-3,
                          true};
  const BandPartition p = make_partition(20.0, 5120.0, 4);
  const SlopeProfile prof = expected_profile(spec, p);

  // Brute force: tabulate log10 S on 10^4 points per decade and read the
  // chords off the table by linear interpolation.
  const double lo = std::log10(10.0), hi = std::log10(10240.0);
  const std::size_t n = static_cast<std::size_t>((hi - lo) * 1e4) + 1;
  std::vector<double> logf(n), logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    logf[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
    logs[i] = log10_target_density(spec, std::pow(10.0, logf[i]));
  }
  const auto table_value = [&](double f) {
    const double x = std::log10(f);
    const auto idx = static_cast<std::size_t>((x - lo) / (hi - lo) *
                                              static_cast<double>(n - 1));
    const std::size_t i = std::min(idx, n - 2);
    const double t = (x - logf[i]) / (logf[i + 1] - logf[i]);
    return logs[i] + t * (logs[i + 1] - logs[i]);
  };
  for (int b = 0; b < p.n_bands; ++b) {
    const double f0 = p.edges[static_cast<std::size_t>(b)];
    const double f1 = p.edges[static_cast<std::size_t>(b) + 1];
    const double chord =
        (table_value(f1) - table_value(f0)) / (std::log10(f1) - std::log10(f0));
    CHECK(std::abs(prof.local_slopes[static_cast<std::size_t>(b)] - chord) <=
          1e-6);
  }
  const double global_chord =
      (table_value(p.f_hi_hz) - table_value(p.f_lo_hz)) /
      (std::log10(p.f_hi_hz) - std::log10(p.f_lo_hz));
  CHECK(std::abs(prof.global_slope - global_chord) <= 1e-6);
}

TEST_CASE("expected fingerprints realize the reference patterns") {
  const BandPartition p = make_partition(16.0, 1600.0, 5);
  // Exponents whose locals sit (below, above, below, above, above) the
  // global chord of -1.
  const double fig2_exp[] = {-1.6, -0.6, -1.6, -0.6, -0.6};
  const SpectrumSpec fig2 = fes::test::spec_from_partition(p, fig2_exp);
  const Fingerprint bin =
      expected_fingerprint(fig2, p, FingerprintKind::binary);
  CHECK(bin.symbols == std::vector<int>{-1, +1, -1, +1, +1});

  // Sample/reference pair realizing (greater, less, equal, greater, greater).
  const double sample_exp[] = {-0.5, -1.8, -1.0, -0.6, -0.9};
  const double reference_exp[] = {-1.0, -1.2, -1.0, -1.1, -1.4};
  const SpectrumSpec sample = fes::test::spec_from_partition(p, sample_exp);
  const SpectrumSpec reference =
      fes::test::spec_from_partition(p, reference_exp);
  const Fingerprint ter = expected_fingerprint(
      sample, p, FingerprintKind::ternary, &reference, 0.1);
  CHECK(ter.symbols == std::vector<int>{+1, -1, 0, +1, +1});

  const Fingerprint self = expected_fingerprint(
      sample, p, FingerprintKind::ternary, &sample, 0.1);
  CHECK(self.symbols == std::vector<int>{0, 0, 0, 0, 0});

  CHECK_THROWS_AS(
      expected_fingerprint(sample, p, FingerprintKind::ternary, nullptr, 0.1),
      Error);
}

TEST_CASE("spec validation and synthesis preconditions") {
  CHECK_THROWS_AS(validate(SpectrumSpec{{}, 1.0, true}), Error);
  CHECK_THROWS_AS(validate(SpectrumSpec{{{10.0, 5.0, -1.0}}, 1.0, true}),
                  Error);
  CHECK_THROWS_AS(
      validate(SpectrumSpec{{{1.0, 10.0, -1.0}, {20.0, 30.0, -1.0}}, 1.0, true}),
      Error);
  CHECK_THROWS_AS(validate(SpectrumSpec{{{1.0, 10.0, -1.0}}, -2.0, true}),
                  Error);

  const SpectrumSpec ok = single_band(10.0, 3000.0, -1.0);
  try {
    synthesize(ok, 4096, 4000.0, 1);  // 3000 Hz > Nyquist 2000 Hz
    FAIL("expected BandExceedsNyquist");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::band_exceeds_nyquist);
  }
  try {
    synthesize(single_band(10.0, 1000.0, -1.0), 512, 4000.0, 1);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_spec);
  }

  const BandPartition outside = make_partition(1.0, 2000.0, 3);
  CHECK_THROWS_AS(expected_profile(single_band(10.0, 1000.0, -1.0), outside),
                  Error);
}

TEST_CASE("spec JSON round-trips") {
  const SpectrumSpec spec{{{10.0, 100.0, -0.5}, {100.0, 1000.0, -1.5}},
                          1.25e-4,
                          true};
  const std::string text = spectrum_spec_to_json(spec);
  const SpectrumSpec back = spectrum_spec_from_json(text);
  REQUIRE(back.bands.size() == 2);
  CHECK(back.bands[0].f_lo_hz == 10.0);
  CHECK(back.bands[1].exponent == -1.5);
  CHECK(back.amplitude_at_f_lo == 1.25e-4);
  CHECK(back.continuity == true);
  CHECK(spectrum_spec_to_json(back) == text);
  CHECK_THROWS_AS(spectrum_spec_from_json("[]"), Error);
}
