#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fes/welch.hpp"

namespace fes {

// Spectrum files exist in two forms:
//   CSV  - two columns `frequency_hz,psd`; '#' header lines carry the meta
//          as key=value pairs.
//   JSON - object mirroring the PowerSpectrum fields.
// Both carry doubles at 17 significant digits, so write -> read -> write is
// byte-stable.

std::string spectrum_to_csv(const PowerSpectrum& sp);
PowerSpectrum spectrum_from_csv(std::istream& in);

std::string spectrum_to_json(const PowerSpectrum& sp);
PowerSpectrum spectrum_from_json(const std::string& text);

// By extension: .json -> JSON, anything else -> CSV.
void write_spectrum(const PowerSpectrum& sp, const std::filesystem::path& path);
PowerSpectrum read_spectrum(const std::filesystem::path& path);

}  // namespace fes
