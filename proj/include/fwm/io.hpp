#pragma once
// Bit-exact data emission and small-file parsing.
//
// CSV schemas (header row mandatory; floats written with 17
// significant digits so read-back reproduces the exact double; rows
// ordered lexicographically by (t, cell) / (l, lprime)):
//   diagonal series : t,cell,re_psi_omega,im_psi_omega,re_psi_e,im_psi_e
//   intensity series: t,cell,I_omega1,I_omega2,I_e1,I_e2
//   2D grid         : l,lprime,re_psi_omega,im_psi_omega,re_psi_e,im_psi_e
//
// Config files are plain "key = value" lines ('#' comments); keys
// mirror the long CLI option names.

#include "fwm/lattice.hpp"
#include "fwm/observables.hpp"
#include "fwm/propagator.hpp"

#include <map>
#include <string>
#include <vector>

namespace fwm {
namespace io {

/// Shortest-roundtrip decimal form of a double (17 significant digits).
std::string format_double(double v);

/// Diagonal time series of a trajectory (one row per snapshot per cell).
void write_diagonal_series_csv(const Trajectory& traj, const std::string& path);

/// Intensity time series of a trajectory.
void write_intensity_series_csv(const Trajectory& traj, const std::string& path);

/// Full 2D grids of one state.
void write_grid_csv(const TwoPhotonState& s, const std::string& path);

/// Read back a grid CSV written by write_grid_csv; the elapsed time is
/// not part of the schema and must be supplied.  Bit-exact inverse.
TwoPhotonState read_grid_csv(const std::string& path, const Lattice& lat, double t);

/// Gnuplot script plotting the emitted CSVs (headless companion file).
void write_gnuplot_script(const std::string& path, const std::string& diag_csv,
                          const std::string& intensity_csv, const std::string& grid_csv);

/// Parse a key=value config file; throws std::runtime_error with the
/// offending line on malformed input.  Later keys override earlier.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace io
}  // namespace fwm
