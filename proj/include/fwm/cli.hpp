#pragma once
// Command-line frontend.  Subcommands:
//   run       propagate one configuration and emit the CSV artifact set
//   validate  run registered validation scenarios (--all, --list, names)
//   sweep     run a comma-separated list of coupling values, emit a summary CSV
//   params    convert physical inputs (density, wavelength, decay rate,
//             detuning) into the coupling and characteristic lengths
//
// Option values are resolved as: command-line flag > config file
// (key=value lines via --config) > FWM_OUTPUT_DIR (output dir only) >
// built-in default.  Exit codes: 0 all validations passed, 1 a
// validation failed or a runtime error occurred, 2 usage error
// (malformed flags, specs, or config).

#include <ostream>

namespace fwm {
namespace cli {

/// Entry point (separate from main() so tests can drive it in-process).
/// Writes normal output to `out` and diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload using std::cout / std::cerr.
int cli_main(int argc, const char* const* argv);

}  // namespace cli
}  // namespace fwm
