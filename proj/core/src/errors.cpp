#include "fes/errors.hpp"

namespace fes {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::parse_error: return "ParseError";
    case Errc::empty_input: return "EmptyInput";
    case Errc::invalid_rate: return "InvalidRate";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::too_short: return "TooShort";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::empty_band: return "EmptyBand";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::nonpositive_psd: return "NonpositivePsd";
    case Errc::invalid_band: return "InvalidBand";
    case Errc::partition_mismatch: return "PartitionMismatch";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::tolerance_mismatch: return "ToleranceMismatch";
    case Errc::too_few: return "TooFew";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::not_found: return "NotFound";
    case Errc::storage_error: return "StorageError";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::band_exceeds_nyquist: return "BandExceedsNyquist";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fes
