#pragma once

#include "fes/fingerprint.hpp"
#include "json_util.hpp"

// Object-level (de)serializers shared between the standalone fingerprint
// files and the reference library document.

namespace fes::detail {

json fingerprint_to_json_obj(const Fingerprint& fp);
Fingerprint fingerprint_from_json_obj(const json& j);

json profile_to_json_obj(const SlopeProfile& profile);
SlopeProfile profile_from_json_obj(const json& j);

}  // namespace fes::detail
