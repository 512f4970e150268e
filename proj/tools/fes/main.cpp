#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fes/errors.hpp"

// Exit codes: 0 success, 1 internal error, 2 usage/validation error.

int main(int argc, char** argv) {
  CLI::App app{"fluctuation-enhanced sensing: spectra, slope fingerprints, "
               "reference comparison"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expanded help for every subcommand");

  fes::cli::register_pds(app);
  fes::cli::register_fingerprint(app);
  fes::cli::register_compare(app);
  fes::cli::register_ref(app);
  fes::cli::register_synth(app);
  fes::cli::register_entropy(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  } catch (const fes::Error& e) {
    std::cerr << "fes: " << e.what() << '\n';
    return e.code() == fes::Errc::storage_error ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "fes: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
