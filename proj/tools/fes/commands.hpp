#pragma once

#include <CLI11.hpp>

// Subcommand registration for the `fes` tool. Each register_* wires one
// subcommand onto the app; the work happens in CLI11 callbacks during
// parse(). Machine output goes to stdout, diagnostics to stderr.

namespace fes::cli {

void register_pds(CLI::App& app);
void register_fingerprint(CLI::App& app);
void register_compare(CLI::App& app);
void register_ref(CLI::App& app);
void register_synth(CLI::App& app);
void register_entropy(CLI::App& app);

}  // namespace fes::cli
