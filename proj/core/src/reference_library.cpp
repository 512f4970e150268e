#include "fes/reference_library.hpp"

#include <system_error>
#include <utility>

#include "fes/errors.hpp"
#include "serialize_detail.hpp"

namespace fes {

namespace {

detail::json library_to_json(const std::map<std::string, ReferenceEntry>& entries) {
  detail::json doc;
  doc["schema_version"] = 1;
  detail::json items = detail::json::object();
  for (const auto& [label, entry] : entries) {
    detail::json e;
    e["profile"] = detail::profile_to_json_obj(entry.profile);
    e["fingerprint"] = detail::fingerprint_to_json_obj(entry.fingerprint);
    e["metadata"] = entry.metadata;
    items[label] = std::move(e);
  }
  doc["entries"] = std::move(items);
  return doc;
}

std::map<std::string, ReferenceEntry> library_from_json(const detail::json& doc) {
  detail::check_schema_version(doc, 1, "reference library");
  const detail::json& items = detail::require(doc, "entries", "reference library");
  if (!items.is_object())
    raise(Errc::parse_error, "reference library entries must be an object");
  std::map<std::string, ReferenceEntry> entries;
  for (const auto& [label, e] : items.items()) {
    ReferenceEntry entry;
    entry.profile = detail::profile_from_json_obj(
        detail::require(e, "profile", "library entry '" + label + "'"));
    entry.fingerprint = detail::fingerprint_from_json_obj(
        detail::require(e, "fingerprint", "library entry '" + label + "'"));
    const detail::json& meta =
        detail::require(e, "metadata", "library entry '" + label + "'");
    entry.metadata = meta.get<std::map<std::string, std::string>>();
    entries.emplace(label, std::move(entry));
  }
  return entries;
}

}  // namespace

ReferenceLibrary::ReferenceLibrary(std::filesystem::path storage)
    : storage_(std::move(storage)) {
  if (std::filesystem::exists(storage_))
    entries_ = library_from_json(detail::parse_json(
        detail::read_text_file(storage_), storage_.string()));
}

void ReferenceLibrary::save() const {
  const std::string text = library_to_json(entries_).dump(2) + "\n";
  // Write the whole document next to the target, then rename: readers never
  // observe a torn file.
  std::filesystem::path tmp = storage_;
  tmp += ".tmp";
  detail::write_text_file(tmp, text);
  std::error_code ec;
  std::filesystem::rename(tmp, storage_, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    raise(Errc::storage_error,
          "cannot replace " + storage_.string() + ": " + ec.message());
  }
}

void ReferenceLibrary::add(const std::string& label, ReferenceEntry entry) {
  if (label.empty())
    raise(Errc::invalid_argument, "reference label must be non-empty");
  if (entries_.contains(label))
    raise(Errc::duplicate_label, "label '" + label + "' already stored");
  validate(entry.profile);
  validate(entry.fingerprint);
  entries_.emplace(label, std::move(entry));
  save();
}

ReferenceEntry ReferenceLibrary::get(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end())
    raise(Errc::not_found, "no reference labeled '" + label + "' in " +
                               storage_.string());
  return it->second;
}

std::vector<std::string> ReferenceLibrary::list() const {
  std::vector<std::string> labels;
  labels.reserve(entries_.size());
  for (const auto& [label, entry] : entries_) labels.push_back(label);
  return labels;  // std::map iteration is already sorted
}

void ReferenceLibrary::remove(const std::string& label) {
  auto it = entries_.find(label);
  if (it == entries_.end())
    raise(Errc::not_found, "no reference labeled '" + label + "' in " +
                               storage_.string());
  entries_.erase(it);
  save();
}

}  // namespace fes
