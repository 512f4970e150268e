#pragma once

#include <stdexcept>
#include <string>

namespace fes {

// Error taxonomy shared by all modules. The CLI maps these onto its exit-code
// contract: validation-type failures exit 2, storage/internal failures exit 1.
enum class Errc {
  file_not_found,
  parse_error,
  empty_input,
  invalid_rate,
  invalid_argument,
  too_short,
  invalid_config,
  empty_band,
  out_of_range,
  nonpositive_psd,
  invalid_band,
  partition_mismatch,
  kind_mismatch,
  tolerance_mismatch,
  too_few,
  duplicate_label,
  not_found,
  storage_error,
  invalid_spec,
  band_exceeds_nyquist,
};

// Stable identifier, e.g. "ParseError"; used in diagnostics and tests.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace fes
