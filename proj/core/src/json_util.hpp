#pragma once

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "fes/errors.hpp"

namespace fes::detail {

using json = nlohmann::json;

inline json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    raise(Errc::parse_error, "malformed JSON in " + what);
  return j;
}

inline const json& require(const json& j, const char* key,
                           const std::string& what) {
  auto it = j.find(key);
  if (it == j.end())
    raise(Errc::parse_error,
          what + " is missing required field '" + std::string(key) + "'");
  return *it;
}

inline void check_schema_version(const json& j, int expected,
                                 const std::string& what) {
  const json& v = require(j, "schema_version", what);
  if (!v.is_number_integer() || v.get<int>() != expected)
    raise(Errc::parse_error, what + " has unsupported schema_version (want " +
                                 std::to_string(expected) + ")");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    raise(Errc::file_not_found, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::storage_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof())
    raise(Errc::storage_error, "read failed on " + path.string());
  return buf.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::storage_error, "cannot write " + path.string());
  out << text;
  if (!out) raise(Errc::storage_error, "write failed on " + path.string());
}

}  // namespace fes::detail
