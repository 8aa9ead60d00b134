#pragma once
// Independent mode-space integrator: the pair coefficients xi/eta obey
// linear ODEs with diagonal kinetic phases and an anti-diagonal
// (pair-sum sector) coupling,
//   d xi[k,k']/dt = -i W(k,k') xi[k,k']
//                   - i (kappa c / M) * sum_{m+n == k+k' (mod M)} eta[m,n]
// and symmetrically with xi <-> eta (full-ring medium only).
//
// W(k,k') is the pair kinetic phase evaluated on the ring:
// (2 pi c / L) * wrap_M(k + k'), with wrap_M the centered residue.
// On the periodic lattice the pair sum k + k' is conserved only as a
// residue class mod M, and the centered-band representative is the
// unique branch on which the kinetic term is constant across each
// coupled sector; any per-particle branch choice (omega_k + omega_k')
// differs from it by 2 pi c/dz on the aliased part of a sector, which
// is invisible at cell-aligned times but breaks the continuous-time
// equivalence with the whole-cell propagator.  See the tests for the
// cell-aligned agreement this buys.
//
// Integration is fixed-step classical RK4 (the system is linear and
// bounded; determinism preferred over adaptivity).

#include "fwm/lattice.hpp"

namespace fwm {
namespace mode_oracle {

/// The ODE system: lattice, coupling, and the one-particle kinetic
/// phases omega_k = 2 pi k c / L for k in the centered band.
struct ModeODESystem {
    Lattice lattice;
    double kappa = 0.0;
    std::vector<double> omega;  ///< omega[a] for DFT-order index a
};

ModeODESystem make_system(const Lattice& lat, double kappa);

/// Ring-reduced pair kinetic phase W for DFT-order indices (a, b).
double pair_phase(const ModeODESystem& sys, int a, int b);

/// Time derivative of the mode coefficients.
ModeCoefficients rhs(const ModeODESystem& sys, const ModeCoefficients& m);

/// Classical RK4 to t_final.  The step actually used is
/// t_final / round(t_final/dt) so the end time is hit exactly.
/// Preconditions: dt > 0 and dt*kappa*c < 0.1 (accuracy guard);
/// violations throw std::invalid_argument.
ModeCoefficients integrate(const ModeODESystem& sys, const ModeCoefficients& m0, double t_final,
                           double dt);

/// L2 distance between the RK4 solution mapped back to the cell grids
/// and a reference state (used for propagator agreement checks).
double l2_distance(const TwoPhotonState& a, const TwoPhotonState& b);

}  // namespace mode_oracle
}  // namespace fwm
