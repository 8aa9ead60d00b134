#pragma once
// Scenario registry and validation runner: binds initial states,
// propagation plans, closed-form references, and the two independent
// oracles into pass/fail reports plus plottable CSV artifacts.
//
// Registered scenarios (each < 10 s, deterministic, bit-identical CSV
// output for identical configs):
//   fig1            pump-pair diagonal/off-diagonal laws over one cycle
//   fig2            generated-pair laws and exact intensity profiles
//   fig2d           full 2D grids at the sign-flip time
//   conversion      cos^2 intensity oscillation, position-correlated input
//   xicondition     full-cycle mode-mixing reflection at M = 9 and 45
//   soliton         form-stable superposition over three cycles
//   window_bvp      finite medium window, depth-resolved rotation angle
//   fock_crosscheck first-principles Fock evolution vs the propagator
//   mode_agreement  RK4 mode-ODE oracle vs the propagator + order check
//   conservation    norm and the four transported quantities, 10^4 steps
//
// Check results are reported as structured text, one line per check:
//   name  residual=<value>  tol=<value>  PASS|FAIL
// Range-style checks (e.g. a convergence-order ratio required to lie in
// [lo, hi]) are folded into the same form by reporting the distance
// from the range midpoint against its half-width.

#include "fwm/lattice.hpp"
#include "fwm/propagator.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwm {
namespace harness {

/// Malformed envelope/mask/config token (maps to a usage error in the
/// CLI, as opposed to a failed validation).
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One validation check: measured residual against a pinned tolerance.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Outcome of one scenario run.
struct ValidationReport {
    std::string scenario;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;  ///< files written (CSV, gnuplot)
    double runtime_seconds = 0.0;

    bool pass() const;  ///< conjunction of all checks
};

/// User-facing simulation configuration (CLI `run` and scenario
/// defaults).  Envelope and mask are given in the mini-grammar
///   envelope := gaussian:<center>,<width> | point:<cell>
///   mask     := full | window:<start>,<end>
/// which is parsed strictly: unknown heads, malformed numbers, trailing
/// junk, or out-of-range cells raise SpecError rather than guessing.
struct SimConfig {
    int modes = 45;
    double dz = 1.0;
    double c = 1.0;
    double kappa = 0.06981317007977318;  ///< pi/45: sign flip after 45 cells
    int steps = 45;
    int snapshot_every = 1;
    std::string envelope = "gaussian:22,4";
    std::string mask = "full";
    std::string input = "separable";  ///< separable | diagonal
    double dt_divisor = 100.0;        ///< mode-oracle step: dt = dz/(divisor*c)
    double tol_transport = 1e-12;     ///< norm/constants-of-motion tolerance
};

Lattice lattice_of(const SimConfig& cfg);
Envelope parse_envelope_spec(const Lattice& lat, const std::string& spec);
MediumMask parse_mask_spec(const Lattice& lat, const std::string& spec);
/// Initial state per cfg.input ("separable" or "diagonal").
TwoPhotonState initial_state(const SimConfig& cfg);

/// Gaussian envelope hard-truncated to the half-open cell range
/// [keep_start, keep_end) (exact zeros outside), renormalized.  Used by
/// boundary-value scenarios that need strictly compact support.
Envelope truncated_gaussian_envelope(const Lattice& lat, double center, double width,
                                     int keep_start, int keep_end);

/// A named, registered validation scenario.
struct Scenario {
    std::string name;
    std::string description;
    std::function<ValidationReport(const std::string& outdir)> run;
};

/// The built-in scenario registry (names above, unique).
const std::vector<Scenario>& registry();
std::vector<std::string> list_scenarios();

/// Run one registered scenario, writing artifacts into outdir (created
/// if missing).  Unknown names raise std::out_of_range.
ValidationReport run_scenario(const std::string& name, const std::string& outdir);

/// Run every scenario in the given list (throws std::invalid_argument
/// on an empty list) / in the registry.
std::vector<ValidationReport> run_these(const std::vector<Scenario>& scenarios,
                                        const std::string& outdir);
std::vector<ValidationReport> run_all(const std::string& outdir);

/// Propagate cfg and emit the standard artifact set (diagonal series,
/// intensity series, final 2D grid, gnuplot script) plus the
/// config-independent validations (norm conservation and the four
/// transported quantities).  `name` prefixes the artifact files.
ValidationReport run_custom(const SimConfig& cfg, const std::string& name,
                            const std::string& outdir);

/// Mode-oracle comparison honoring cfg.dt_divisor (the registry entry
/// "mode_agreement" runs this with default config).
ValidationReport run_mode_agreement(const SimConfig& cfg, const std::string& outdir);

/// One line per check: name, residual, tolerance, PASS/FAIL.
std::string format_report(const ValidationReport& report);
/// All reports formatted plus a one-line overall summary.
std::string format_reports(const std::vector<ValidationReport>& reports);
bool all_pass(const std::vector<ValidationReport>& reports);

}  // namespace harness
}  // namespace fwm
