#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fes/fingerprint.hpp"

namespace fes {

struct ReferenceEntry {
  SlopeProfile profile;
  Fingerprint fingerprint;
  std::map<std::string, std::string> metadata;  // free-form acquisition notes
};

// JSON-file-backed catalog of reference-agent profiles (schema_version 1).
// Concurrent reads are safe; mutations must be serialized externally.
// Every mutation persists immediately via write-to-temp-then-rename, so a
// crash never leaves a partially written library behind.
class ReferenceLibrary {
 public:
  // Binds to `storage` and loads it when the file exists; otherwise starts
  // empty (the file appears on the first mutation).
  explicit ReferenceLibrary(std::filesystem::path storage);

  void add(const std::string& label, ReferenceEntry entry);
  ReferenceEntry get(const std::string& label) const;
  std::vector<std::string> list() const;  // sorted labels
  void remove(const std::string& label);

  std::size_t size() const { return entries_.size(); }
  const std::filesystem::path& storage_path() const { return storage_; }

  void save() const;

 private:
  std::filesystem::path storage_;
  std::map<std::string, ReferenceEntry> entries_;
};

}  // namespace fes
