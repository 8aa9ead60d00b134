#pragma once
// Measurable quantities and conservation-law residuals extracted from
// states and trajectories.

#include "fwm/analytic.hpp"
#include "fwm/lattice.hpp"
#include "fwm/propagator.hpp"

#include <array>
#include <vector>

namespace fwm {
namespace obs {

/// Per-cell mean intensities of the four fields (marginals of the
/// two-photon grids): I_omega1[l] = sum_{l'} |psi_omega[l,l']|^2 dz, etc.
struct IntensityProfile {
    std::vector<double> i_omega1, i_omega2, i_e1, i_e2;
};

IntensityProfile intensities(const TwoPhotonState& s);

/// Copy of the pump-pair diagonal psi_omega[l,l].
std::vector<complexd> diagonal_slice(const TwoPhotonState& s);

/// Pair of relative residuals
///   ( ||diag(psi) + diag(ref)|| / ||diag(ref)||,
///     ||offdiag(psi) - shift(offdiag(ref))|| / ||offdiag(ref)|| )
/// where shift moves the reference off-diagonal along the transport by
/// the elapsed whole-cell steps.  Both near zero exactly when the
/// diagonal has flipped sign while the off-diagonal was only carried
/// along.  Applied to both pair grids jointly.
std::pair<double, double> sign_flip_metric(const TwoPhotonState& state,
                                           const TwoPhotonState& reference);

/// max |xi_tau - reflected(xi_t0)| over all mode pairs and both
/// arrays, with reflected() the full-cycle mixing map.  The inputs
/// must be co-moving-frame coefficients (equivalently: taken at
/// whole-ring-loop times, where transport phases are unity).
double xicondition_residual(const ModeCoefficients& xi_t0, const ModeCoefficients& xi_tau);

/// The four per-cell transported quantities:
///   q0 = I_omega1 + I_e1, q1 = I_omega2 + I_e2, q2 = I_omega1 - I_omega2,
///   q3 = 2 Re[conj(psi_omega[l,l]) psi_e[l,l]]  (relative phase).
/// q3 is evaluated on the diagonal only: the underlying operator is a
/// position-local product of all four fields, whose two-photon-sector
/// expectation sum_{l'} picks out l' = l; off-diagonal terms vanish
/// identically because each field pair annihilates unless both photons
/// of a pair sit at the same cell.
std::array<std::vector<double>, 4> manley_rowe_cells(const TwoPhotonState& s);

/// Worst per-quantity transport defect between two snapshots that are
/// `steps` whole-cell steps apart: max_l |Q(l, t2) - Q(l - steps, t1)|.
std::array<double, 4> transport_residuals(const TwoPhotonState& earlier,
                                          const TwoPhotonState& later, int steps);

struct ConservationReport {
    std::array<double, 4> max_residual{};   ///< per-quantity worst transport defect
    std::vector<double> relative_phase_trace;  ///< sum_l q3(l) dz per snapshot
    double norm_drift = 0.0;                ///< max |norm - 1| over the trajectory
};

/// Evaluate transport residuals between consecutive snapshots of a
/// trajectory (snapshots are snapshot_every steps apart; a trailing
/// partial interval is handled by its actual step count).
ConservationReport conservation_check(const Trajectory& traj);

}  // namespace obs
}  // namespace fwm
