#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>
#include <vector>

#include "fes/errors.hpp"
#include "fes/pipeline.hpp"
#include "fes/reference_library.hpp"
#include "fes/similarity.hpp"
#include "fes/spectrum_io.hpp"
#include "fes/synth.hpp"

namespace fes::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const fs::path& path) {
  if (!fs::exists(path)) raise(Errc::file_not_found, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::storage_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::storage_error, "cannot write " + path.string());
  out << text;
  if (!out) raise(Errc::storage_error, "write failed on " + path.string());
}

fs::path resolve_library_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FES_LIBRARY"); env != nullptr && *env != '\0')
    return env;
  return "fes_library.json";
}

// Pipeline parameters shared by pds / fingerprint / ref add. A config file
// provides the base values; explicitly passed flags win over the file.
class PipelineOptions {
 public:
  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path_,
                    "Pipeline config JSON (flags override file values)");
    o_seg_ = cmd->add_option("--segment-length", segment_length_,
                             "Welch segment length (power of two)");
    o_overlap_ = cmd->add_option("--overlap", overlap_,
                                 "Welch overlap fraction in [0,1)");
    o_window_ = cmd->add_option("--window", window_,
                                "Window: hann|hamming|rectangular");
    o_segdet_ = cmd->add_option("--segment-detrend", segment_detrend_,
                                "Per-segment detrend: none|mean|linear");
    o_detrend_ = cmd->add_option("--detrend", detrend_,
                                 "Record detrend: mean|linear");
    o_flo_ = cmd->add_option("--f-lo", f_lo_, "Analysis band lower edge [Hz]");
    o_fhi_ = cmd->add_option("--f-hi", f_hi_, "Analysis band upper edge [Hz]");
    o_bands_ = cmd->add_option("--n-bands", n_bands_,
                               "Number of log-equal sub-bands");
    o_tol_ = cmd->add_option("--tolerance", tolerance_,
                             "Ternary equal-slope tolerance");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_path_.empty())
      cfg = pipeline_config_from_json(read_file(config_path_));
    if (o_seg_->count() > 0) cfg.welch.segment_length = segment_length_;
    if (o_overlap_->count() > 0) cfg.welch.overlap_fraction = overlap_;
    if (o_window_->count() > 0) cfg.welch.window = window_from_string(window_);
    if (o_segdet_->count() > 0)
      cfg.welch.per_segment_detrend = segment_detrend_from_string(segment_detrend_);
    if (o_detrend_->count() > 0) cfg.detrend = detrend_mode_from_string(detrend_);
    if (o_flo_->count() > 0) cfg.f_lo_hz = f_lo_;
    if (o_fhi_->count() > 0) cfg.f_hi_hz = f_hi_;
    if (o_bands_->count() > 0) cfg.n_bands = n_bands_;
    if (o_tol_->count() > 0) cfg.tolerance = tolerance_;
    validate(cfg);
    return cfg;
  }

 private:
  std::string config_path_;
  int segment_length_{4096};
  double overlap_{0.5};
  std::string window_{"hann"};
  std::string segment_detrend_{"mean"};
  std::string detrend_{"mean"};
  double f_lo_{0.0}, f_hi_{0.0}, tolerance_{0.1};
  int n_bands_{5};
  CLI::Option *o_seg_{}, *o_overlap_{}, *o_window_{}, *o_segdet_{},
      *o_detrend_{}, *o_flo_{}, *o_fhi_{}, *o_bands_{}, *o_tol_{};
};

struct InputOptions {
  std::vector<std::string> inputs;
  std::string format{"auto"};
  double rate{0.0};

  void attach(CLI::App* cmd, bool multiple) {
    auto* in = cmd->add_option("--input,input", inputs,
                               "Time-series file(s): CSV or raw float64");
    in->required();
    if (!multiple) in->expected(1);
    cmd->add_option("--format", format, "Input format: auto|csv|raw")
        ->check(CLI::IsMember({"auto", "csv", "raw"}));
    cmd->add_option("--rate", rate, "Sample rate [Hz]")->required();
  }

  TimeSeries load_one(const std::string& path) const {
    TimeSeriesFormat f = format == "csv"   ? TimeSeriesFormat::csv
                         : format == "raw" ? TimeSeriesFormat::raw_f64
                                           : guess_timeseries_format(path);
    return load_timeseries(path, f, rate);
  }
};

json fingerprint_json_obj(const Fingerprint& fp) {
  return json::parse(fingerprint_to_json(fp));
}

void print_bars(std::ostream& os, const Fingerprint& fp,
                const SlopeProfile* reference) {
  os << "fingerprint " << to_string(fp.kind) << "  source=" << fp.source_label;
  if (fp.reference_label) os << "  reference=" << *fp.reference_label;
  os << "\n";
  os << "band      f_lo_hz      f_hi_hz  local_slope  "
     << (fp.kind == FingerprintKind::binary ? "global_slope" : "ref_slope")
     << "  symbol\n";
  char line[160];
  for (std::size_t i = 0; i < fp.symbols.size(); ++i) {
    const double compare_to = fp.kind == FingerprintKind::binary
                                  ? fp.global_slope
                                  : reference->local_slopes[i];
    std::snprintf(line, sizeof(line),
                  "%4zu %12.4f %12.4f %12.4f %12.4f  %+d\n", i + 1,
                  fp.partition.edges[i], fp.partition.edges[i + 1],
                  fp.local_slopes[i], compare_to, fp.symbols[i]);
    os << line;
  }
}

std::string bars_csv(const Fingerprint& fp, const SlopeProfile* reference) {
  std::ostringstream out;
  out << "band,f_lo_hz,f_hi_hz,local_slope,"
      << (fp.kind == FingerprintKind::binary ? "global_slope" : "reference_slope")
      << ",symbol\n";
  for (std::size_t i = 0; i < fp.symbols.size(); ++i) {
    const double compare_to = fp.kind == FingerprintKind::binary
                                  ? fp.global_slope
                                  : reference->local_slopes[i];
    out << (i + 1) << ',' << fmt(fp.partition.edges[i]) << ','
        << fmt(fp.partition.edges[i + 1]) << ',' << fmt(fp.local_slopes[i])
        << ',' << fmt(compare_to) << ',' << fp.symbols[i] << '\n';
  }
  return out.str();
}

// A reference is a library label, a fingerprint JSON file, or a spectrum
// file (profiled under the active partition).
SlopeProfile resolve_reference(const std::string& ref,
                               const fs::path& library_path,
                               const PipelineConfig& cfg) {
  if (fs::exists(library_path)) {
    ReferenceLibrary lib(library_path);
    const auto labels = lib.list();
    if (std::find(labels.begin(), labels.end(), ref) != labels.end())
      return lib.get(ref).profile;
  }
  if (fs::exists(ref)) {
    const fs::path path(ref);
    if (path.extension() == ".json") {
      const std::string text = read_file(path);
      try {
        return profile_of(fingerprint_from_json(text));
      } catch (const Error&) {
        return local_slopes(spectrum_from_json(text), partition_of(cfg));
      }
    }
    return local_slopes(read_spectrum(path), partition_of(cfg));
  }
  raise(Errc::not_found, "reference '" + ref +
                             "' is neither a label in " +
                             library_path.string() + " nor a readable file");
}

void register_pds_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand("pds", "Estimate the power density spectrum");
  auto input = std::make_shared<InputOptions>();
  auto pipe = std::make_shared<PipelineOptions>();
  auto output = std::make_shared<std::string>();
  auto plot = std::make_shared<std::string>();
  auto restrict_flag = std::make_shared<bool>(false);
  input->attach(cmd, /*multiple=*/false);
  pipe->attach(cmd);
  cmd->add_option("--output", *output, "Spectrum file (.json or CSV)")
      ->required();
  cmd->add_option("--plot", *plot,
                  "Also write a two-column (log10 f, log10 S) plot file");
  cmd->add_flag("--restrict", *restrict_flag,
                "Clip the output to the configured analysis band");

  cmd->callback([=]() {
    const PipelineConfig cfg = pipe->resolve();
    const TimeSeries ts = input->load_one(input->inputs.front());
    PowerSpectrum sp = compute_pds(ts, cfg);
    if (*restrict_flag) sp = restrict_band(sp, cfg.f_lo_hz, cfg.f_hi_hz);
    write_spectrum(sp, *output);

    if (!plot->empty()) {
      std::ostringstream text;
      text << "# log10_frequency_hz log10_psd\n";
      for (std::size_t i = 0; i < sp.frequencies_hz.size(); ++i)
        if (sp.psd[i] > 0.0)
          text << fmt(std::log10(sp.frequencies_hz[i])) << ' '
               << fmt(std::log10(sp.psd[i])) << '\n';
      write_file(*plot, text.str());
    }

    json summary;
    summary["schema_version"] = 1;
    summary["spectrum"] = *output;
    summary["bins"] = sp.frequencies_hz.size();
    summary["f_first_hz"] = sp.frequencies_hz.front();
    summary["f_last_hz"] = sp.frequencies_hz.back();
    summary["source_label"] = sp.meta.source_label;
    std::cout << summary.dump(2) << '\n';
  });
}

void register_fingerprint_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "fingerprint", "Extract a binary or ternary fingerprint");
  auto input = std::make_shared<InputOptions>();
  auto pipe = std::make_shared<PipelineOptions>();
  auto mode = std::make_shared<std::string>("binary");
  auto reference = std::make_shared<std::string>();
  auto library = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto output_dir = std::make_shared<std::string>();
  auto bars_path = std::make_shared<std::string>();
  auto jobs = std::make_shared<int>(1);
  input->attach(cmd, /*multiple=*/true);
  pipe->attach(cmd);
  cmd->add_option("--mode", *mode, "binary|ternary")
      ->check(CLI::IsMember({"binary", "ternary"}));
  cmd->add_option("--reference", *reference,
                  "Reference for ternary mode: library label, fingerprint "
                  "JSON, or spectrum file");
  cmd->add_option("--library", *library,
                  "Reference library path (default: FES_LIBRARY or "
                  "./fes_library.json)");
  cmd->add_option("--output", *output,
                  "Write the fingerprint JSON here (single input only)");
  cmd->add_option("--output-dir", *output_dir,
                  "Write one <stem>.fingerprint.json per input");
  cmd->add_option("--bars", *bars_path,
                  "Write the per-band bar table as CSV");
  cmd->add_option("--jobs", *jobs, "Parallel workers for batch input")
      ->check(CLI::PositiveNumber);

  cmd->callback([=]() {
    const PipelineConfig cfg = pipe->resolve();
    const bool ternary = *mode == "ternary";
    std::shared_ptr<SlopeProfile> ref_profile;
    if (ternary) {
      std::string ref_name = *reference;
      if (ref_name.empty() && cfg.reference_label)
        ref_name = *cfg.reference_label;
      if (ref_name.empty())
        raise(Errc::invalid_argument,
              "ternary mode needs --reference (or reference_label in the "
              "config)");
      ref_profile = std::make_shared<SlopeProfile>(resolve_reference(
          ref_name, resolve_library_path(*library), cfg));
    }
    if (!output->empty() && input->inputs.size() != 1)
      raise(Errc::invalid_argument,
            "--output works with exactly one input; use --output-dir");

    const auto& inputs = input->inputs;
    std::vector<Fingerprint> results(inputs.size());
    std::vector<std::exception_ptr> failures(inputs.size());
    const auto worker_count = static_cast<std::size_t>(std::clamp(
        *jobs, 1, static_cast<int>(inputs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i = next.fetch_add(1); i < inputs.size();
           i = next.fetch_add(1)) {
        try {
          const TimeSeries ts = input->load_one(inputs[i]);
          results[i] = ternary
                           ? compute_ternary_fingerprint(ts, *ref_profile, cfg)
                           : compute_binary_fingerprint(ts, cfg);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    if (worker_count <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < results.size(); ++i) {
      print_bars(std::cerr, results[i],
                 ternary ? ref_profile.get() : nullptr);
      if (!output_dir->empty()) {
        fs::create_directories(*output_dir);
        const fs::path out = fs::path(*output_dir) /
                             (fs::path(inputs[i]).stem().string() +
                              ".fingerprint.json");
        write_fingerprint(results[i], out);
      }
    }
    if (!bars_path->empty())
      write_file(*bars_path,
                 bars_csv(results.front(),
                          ternary ? ref_profile.get() : nullptr));
    if (!output->empty()) write_fingerprint(results.front(), *output);

    if (results.size() == 1) {
      std::cout << fingerprint_to_json(results.front());
    } else {
      json arr = json::array();
      for (const Fingerprint& fp : results)
        arr.push_back(fingerprint_json_obj(fp));
      std::cout << arr.dump(2) << '\n';
    }
  });
}

void register_compare_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "compare", "Pairwise similarity and reproducibility of fingerprints");
  auto files = std::make_shared<std::vector<std::string>>();
  auto format = std::make_shared<std::string>("json");
  cmd->add_option("files", *files, "Fingerprint JSON files (>= 2)")
      ->required()
      ->expected(-2);
  cmd->add_option("--format", *format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  cmd->callback([=]() {
    std::vector<Fingerprint> fps;
    for (const auto& f : *files) fps.push_back(read_fingerprint(f));

    const std::size_t n = fps.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        matrix[i][j] = matrix[j][i] = similarity(fps[i], fps[j]).similarity;
    const double mean_similarity = reproducibility(fps);

    if (*format == "json") {
      json out;
      out["schema_version"] = 1;
      out["files"] = *files;
      json labels = json::array();
      for (const Fingerprint& fp : fps) labels.push_back(fp.source_label);
      out["labels"] = labels;
      out["kind"] = to_string(fps.front().kind);
      out["n_bands"] = fps.front().partition.n_bands;
      out["pairwise_similarity"] = matrix;
      out["mean_pairwise_similarity"] = mean_similarity;
      std::cout << out.dump(2) << '\n';
    } else {
      char buf[64];
      std::cout << "pairwise similarity (" << n << " fingerprints)\n";
      for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%-20.20s",
                      fps[i].source_label.c_str());
        std::cout << buf;
        for (std::size_t j = 0; j < n; ++j) {
          std::snprintf(buf, sizeof(buf), " %6.3f", matrix[i][j]);
          std::cout << buf;
        }
        std::cout << '\n';
      }
      std::snprintf(buf, sizeof(buf), "%.6f", mean_similarity);
      std::cout << "mean pairwise similarity: " << buf << '\n';
    }
  });
}

void register_ref_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand("ref", "Manage the reference library");
  cmd->require_subcommand(1);
  auto library = std::make_shared<std::string>();
  cmd->add_option("--library", *library,
                  "Library path (default: FES_LIBRARY or ./fes_library.json)");

  // add
  {
    auto* sub = cmd->add_subcommand("add", "Store a reference profile");
    auto label = std::make_shared<std::string>();
    auto from_fp = std::make_shared<std::string>();
    auto metadata = std::make_shared<std::vector<std::string>>();
    auto input = std::make_shared<InputOptions>();
    auto pipe = std::make_shared<PipelineOptions>();
    sub->add_option("--label", *label, "Unique library label")->required();
    sub->add_option("--fingerprint", *from_fp,
                    "Take the profile from an existing fingerprint JSON");
    auto* in_opt = sub->add_option("--input", input->inputs,
                                   "Compute the profile from a time series");
    in_opt->expected(1);
    sub->add_option("--format", input->format, "Input format: auto|csv|raw")
        ->check(CLI::IsMember({"auto", "csv", "raw"}));
    auto* rate_opt = sub->add_option("--rate", input->rate, "Sample rate [Hz]");
    pipe->attach(sub);
    sub->add_option("--meta", *metadata, "Metadata entries as key=value");

    sub->callback([=]() {
      ReferenceEntry entry;
      if (!from_fp->empty()) {
        entry.fingerprint = read_fingerprint(*from_fp);
        entry.profile = profile_of(entry.fingerprint);
      } else if (!input->inputs.empty()) {
        if (rate_opt->count() == 0)
          raise(Errc::invalid_argument, "--input needs --rate");
        const PipelineConfig cfg = pipe->resolve();
        const TimeSeries ts = input->load_one(input->inputs.front());
        entry.fingerprint = compute_binary_fingerprint(ts, cfg);
        entry.profile = profile_of(entry.fingerprint);
      } else {
        raise(Errc::invalid_argument,
              "ref add needs --fingerprint or --input");
      }
      // Ternary encoding names its reference by this label.
      entry.profile.source_label = *label;
      for (const std::string& kv : *metadata) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          raise(Errc::invalid_argument, "--meta expects key=value, got '" +
                                            kv + "'");
        entry.metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      ReferenceLibrary lib(resolve_library_path(*library));
      lib.add(*label, std::move(entry));
      json out;
      out["schema_version"] = 1;
      out["added"] = *label;
      out["library"] = lib.storage_path().string();
      std::cout << out.dump(2) << '\n';
    });
  }

  // get
  {
    auto* sub = cmd->add_subcommand("get", "Print one stored entry");
    auto label = std::make_shared<std::string>();
    sub->add_option("--label", *label, "Label to fetch")->required();
    sub->callback([=]() {
      ReferenceLibrary lib(resolve_library_path(*library));
      const ReferenceEntry entry = lib.get(*label);
      json out;
      out["schema_version"] = 1;
      out["label"] = *label;
      out["fingerprint"] = fingerprint_json_obj(entry.fingerprint);
      out["profile_source_label"] = entry.profile.source_label;
      out["metadata"] = entry.metadata;
      std::cout << out.dump(2) << '\n';
    });
  }

  // list
  {
    auto* sub = cmd->add_subcommand("list", "List stored labels");
    sub->callback([=]() {
      ReferenceLibrary lib(resolve_library_path(*library));
      json out = lib.list();
      std::cout << out.dump(2) << '\n';
    });
  }

  // remove
  {
    auto* sub = cmd->add_subcommand("remove", "Delete one stored entry");
    auto label = std::make_shared<std::string>();
    sub->add_option("--label", *label, "Label to delete")->required();
    sub->callback([=]() {
      ReferenceLibrary lib(resolve_library_path(*library));
      lib.remove(*label);
      json out;
      out["schema_version"] = 1;
      out["removed"] = *label;
      std::cout << out.dump(2) << '\n';
    });
  }
}

void register_synth_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "synth", "Generate a record with a prescribed power-law spectrum");
  auto spec_file = std::make_shared<std::string>();
  auto spec_inline = std::make_shared<std::string>();
  auto n = std::make_shared<std::size_t>(0);
  auto fs_hz = std::make_shared<double>(0.0);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto output = std::make_shared<std::string>();
  cmd->add_option("--spec", *spec_file, "Spectrum spec JSON file");
  cmd->add_option("--spec-inline", *spec_inline, "Spectrum spec JSON string");
  cmd->add_option("--n", *n, "Number of samples (>= 1024)")->required();
  cmd->add_option("--fs", *fs_hz, "Sample rate [Hz]")->required();
  cmd->add_option("--seed", *seed, "RNG seed (output is deterministic)");
  cmd->add_option("--output", *output, "Output file (.csv or raw float64)")
      ->required();

  cmd->callback([=]() {
    if (spec_file->empty() == spec_inline->empty())
      raise(Errc::invalid_argument,
            "pass exactly one of --spec or --spec-inline");
    const SpectrumSpec spec = spectrum_spec_from_json(
        spec_inline->empty() ? read_file(*spec_file) : *spec_inline);
    const TimeSeries ts = synthesize(spec, *n, *fs_hz, *seed);
    write_timeseries(ts, *output, guess_timeseries_format(*output));
    json out;
    out["schema_version"] = 1;
    out["path"] = *output;
    out["n_samples"] = ts.samples.size();
    out["sample_rate_hz"] = ts.sample_rate_hz;
    out["seed"] = *seed;
    out["mean"] = mean(ts.samples);
    out["variance"] = variance(ts.samples);
    std::cout << out.dump(2) << '\n';
  });
}

void register_entropy_impl(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "entropy", "Empirical symbol entropy of a fingerprint ensemble");
  auto files = std::make_shared<std::vector<std::string>>();
  auto per_position = std::make_shared<bool>(false);
  cmd->add_option("files", *files, "Fingerprint JSON files")->required();
  cmd->add_flag("--per-position", *per_position,
                "Average per-position entropies instead of pooling");

  cmd->callback([=]() {
    std::vector<Fingerprint> fps;
    for (const auto& f : *files) fps.push_back(read_fingerprint(f));
    const EntropyPooling pooling = *per_position
                                       ? EntropyPooling::per_position
                                       : EntropyPooling::pooled;
    const double bits = empirical_entropy(fps, pooling);
    json out;
    out["schema_version"] = 1;
    out["bits_per_symbol"] = bits;
    out["kind"] = to_string(fps.front().kind);
    out["n_fingerprints"] = fps.size();
    out["n_bands"] = fps.front().partition.n_bands;
    out["pooling"] = *per_position ? "per_position" : "pooled";
    std::cout << out.dump(2) << '\n';
  });
}

}  // namespace

void register_pds(CLI::App& app) { register_pds_impl(app); }
void register_fingerprint(CLI::App& app) { register_fingerprint_impl(app); }
void register_compare(CLI::App& app) { register_compare_impl(app); }
void register_ref(CLI::App& app) { register_ref_impl(app); }
void register_synth(CLI::App& app) { register_synth_impl(app); }
void register_entropy(CLI::App& app) { register_entropy_impl(app); }

}  // namespace fes::cli
