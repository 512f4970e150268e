#include "fes/spectrum_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "fes/errors.hpp"
#include "json_util.hpp"

namespace fes {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    raise(Errc::parse_error, "bad number '" + text + "' in " + what);
  return v;
}

}  // namespace

std::string spectrum_to_csv(const PowerSpectrum& sp) {
  validate(sp);
  std::ostringstream out;
  out << "# schema_version=1\n";
  out << "# source_label=" << sp.meta.source_label << '\n';
  out << "# segment_length=" << sp.meta.welch.segment_length << '\n';
  out << "# overlap_fraction=" << fmt17(sp.meta.welch.overlap_fraction) << '\n';
  out << "# window=" << to_string(sp.meta.welch.window) << '\n';
  out << "# per_segment_detrend=" << to_string(sp.meta.welch.per_segment_detrend)
      << '\n';
  if (sp.meta.band_lo_hz)
    out << "# band_lo_hz=" << fmt17(*sp.meta.band_lo_hz) << '\n';
  if (sp.meta.band_hi_hz)
    out << "# band_hi_hz=" << fmt17(*sp.meta.band_hi_hz) << '\n';
  if (sp.meta.smoothed_points_per_decade)
    out << "# smoothed_points_per_decade=" << *sp.meta.smoothed_points_per_decade
        << '\n';
  out << "frequency_hz,psd\n";
  for (std::size_t i = 0; i < sp.frequencies_hz.size(); ++i)
    out << fmt17(sp.frequencies_hz[i]) << ',' << fmt17(sp.psd[i]) << '\n';
  return out.str();
}

PowerSpectrum spectrum_from_csv(std::istream& in) {
  PowerSpectrum sp;
  std::map<std::string, std::string> meta;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq != std::string::npos)
        meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    if (line == "frequency_hz,psd") continue;  // column header
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      raise(Errc::parse_error,
            "expected 'frequency_hz,psd' row at line " + std::to_string(line_no));
    const std::string what = "spectrum CSV line " + std::to_string(line_no);
    sp.frequencies_hz.push_back(parse_double(line.substr(0, comma), what));
    sp.psd.push_back(parse_double(line.substr(comma + 1), what));
  }

  if (auto it = meta.find("source_label"); it != meta.end())
    sp.meta.source_label = it->second;
  if (auto it = meta.find("segment_length"); it != meta.end())
    sp.meta.welch.segment_length =
        static_cast<int>(parse_double(it->second, "segment_length"));
  if (auto it = meta.find("overlap_fraction"); it != meta.end())
    sp.meta.welch.overlap_fraction = parse_double(it->second, "overlap_fraction");
  if (auto it = meta.find("window"); it != meta.end())
    sp.meta.welch.window = window_from_string(it->second);
  if (auto it = meta.find("per_segment_detrend"); it != meta.end())
    sp.meta.welch.per_segment_detrend =
        segment_detrend_from_string(it->second);
  if (auto it = meta.find("band_lo_hz"); it != meta.end())
    sp.meta.band_lo_hz = parse_double(it->second, "band_lo_hz");
  if (auto it = meta.find("band_hi_hz"); it != meta.end())
    sp.meta.band_hi_hz = parse_double(it->second, "band_hi_hz");
  if (auto it = meta.find("smoothed_points_per_decade"); it != meta.end())
    sp.meta.smoothed_points_per_decade =
        static_cast<int>(parse_double(it->second, "smoothed_points_per_decade"));

  try {
    validate(sp);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid spectrum: ") + e.what());
  }
  return sp;
}

std::string spectrum_to_json(const PowerSpectrum& sp) {
  validate(sp);
  detail::json j;
  j["schema_version"] = 1;
  j["frequencies_hz"] = sp.frequencies_hz;
  j["psd"] = sp.psd;
  detail::json meta;
  meta["source_label"] = sp.meta.source_label;
  meta["segment_length"] = sp.meta.welch.segment_length;
  meta["overlap_fraction"] = sp.meta.welch.overlap_fraction;
  meta["window"] = to_string(sp.meta.welch.window);
  meta["per_segment_detrend"] = to_string(sp.meta.welch.per_segment_detrend);
  if (sp.meta.band_lo_hz) meta["band_lo_hz"] = *sp.meta.band_lo_hz;
  if (sp.meta.band_hi_hz) meta["band_hi_hz"] = *sp.meta.band_hi_hz;
  if (sp.meta.smoothed_points_per_decade)
    meta["smoothed_points_per_decade"] = *sp.meta.smoothed_points_per_decade;
  j["meta"] = std::move(meta);
  return j.dump(2) + "\n";
}

PowerSpectrum spectrum_from_json(const std::string& text) {
  const detail::json j = detail::parse_json(text, "spectrum");
  detail::check_schema_version(j, 1, "spectrum");
  PowerSpectrum sp;
  sp.frequencies_hz = detail::require(j, "frequencies_hz", "spectrum")
                          .get<std::vector<double>>();
  sp.psd = detail::require(j, "psd", "spectrum").get<std::vector<double>>();
  const detail::json& meta = detail::require(j, "meta", "spectrum");
  sp.meta.source_label =
      detail::require(meta, "source_label", "spectrum meta").get<std::string>();
  sp.meta.welch.segment_length =
      detail::require(meta, "segment_length", "spectrum meta").get<int>();
  sp.meta.welch.overlap_fraction =
      detail::require(meta, "overlap_fraction", "spectrum meta").get<double>();
  sp.meta.welch.window = window_from_string(
      detail::require(meta, "window", "spectrum meta").get<std::string>());
  sp.meta.welch.per_segment_detrend = segment_detrend_from_string(
      detail::require(meta, "per_segment_detrend", "spectrum meta")
          .get<std::string>());
  if (meta.contains("band_lo_hz"))
    sp.meta.band_lo_hz = meta["band_lo_hz"].get<double>();
  if (meta.contains("band_hi_hz"))
    sp.meta.band_hi_hz = meta["band_hi_hz"].get<double>();
  if (meta.contains("smoothed_points_per_decade"))
    sp.meta.smoothed_points_per_decade =
        meta["smoothed_points_per_decade"].get<int>();
  try {
    validate(sp);
  } catch (const Error& e) {
    raise(Errc::parse_error, std::string("invalid spectrum: ") + e.what());
  }
  return sp;
}

void write_spectrum(const PowerSpectrum& sp,
                    const std::filesystem::path& path) {
  detail::write_text_file(path, path.extension() == ".json"
                                    ? spectrum_to_json(sp)
                                    : spectrum_to_csv(sp));
}

PowerSpectrum read_spectrum(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    raise(Errc::file_not_found, path.string());
  if (path.extension() == ".json")
    return spectrum_from_json(detail::read_text_file(path));
  std::ifstream in(path);
  if (!in) raise(Errc::storage_error, "cannot open " + path.string());
  return spectrum_from_csv(in);
}

}  // namespace fes
