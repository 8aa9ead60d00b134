#pragma once
// Closed-form solutions for the two-photon conversion dynamics and
// physical-parameter conversions; the truth source the numerics are
// checked against.
//
// The angle argument everywhere is "kappa times accumulated in-medium
// path": kappa*c*t for a full-ring initial-value run, kappa*z (depth)
// for a finite window traversed in steady state.  One code path serves
// both geometries.
//
// On the diagonal the pump/generated pair amplitudes obey
//   psi_omega(z,z,t) =    psi0(z-ct) cos(angle)
//   psi_e(z,z,t)     = -i psi0(z-ct) sin(angle)
// (psi0 is the initial diagonal profile), off-diagonal entries are
// transported unchanged, and intensities exchange as cos^2 / sin^2.
// At angle = pi the diagonal has flipped sign; in mode space the full
// cycle acts as the reflection 1 - 2P with P the (mod-M) pair-sum
// sector projection.

#include "fwm/lattice.hpp"

#include <vector>

namespace fwm {
namespace analytic {

/// Initial diagonal profile values psi0[l] (e.g. f0[l]^2 for a product
/// input, phi0[l]/sqrt(dz) for the position-correlated input).
using DiagProfile = std::vector<complexd>;

/// Diagonal profile of a state (copy of psi_omega's diagonal).
DiagProfile diagonal_of(const TwoPhotonState& s);

/// Pump-pair diagonal amplitude: psi0(z - ct) * cos(angle).  The cell
/// argument is l; transport is periodic.  steps = c*t/dz must be integer.
complexd diag_psi_omega(const DiagProfile& psi0, const Lattice& lat, int l, int steps,
                        double angle);

/// Generated-pair diagonal amplitude: -i * psi0(z - ct) * sin(angle).
complexd diag_psi_e(const DiagProfile& psi0, const Lattice& lat, int l, int steps, double angle);

/// Intensity pair {pump, generated} = {psi0*cos^2, psi0*sin^2} at cell
/// l after the given whole-cell transport; psi0 here is a real
/// intensity profile.  The two entries sum to the transported psi0.
struct IntensityPair {
    double pump;
    double generated;
};
IntensityPair intensity_omega(const std::vector<double>& psi0, const Lattice& lat, int l,
                              int steps, double angle);

/// Full-cycle mode mixing: out = in - (2/M) * (sum of in over the
/// anti-diagonal sector m + n == k + k' (mod M)), applied to both mode
/// arrays.  An involution (reflection 1 - 2P).
ModeCoefficients xi_after_full_cycle(const ModeCoefficients& m0);

/// Form-stable superposition cos(angle)*diag(psi_omega) +
/// i*sin(angle)*diag(psi_e); for the position-correlated input this
/// equals the transported initial profile at every time.
DiagProfile soliton_superposition(const TwoPhotonState& s, double angle);

/// The complementary superposition sin(angle)*diag(psi_omega) -
/// i*cos(angle)*diag(psi_e); identically zero on the soliton solution.
DiagProfile soliton_orthogonal(const TwoPhotonState& s, double angle);

/// Physical inputs in SI-style units: atom density [1/m^3], wavelength
/// [m], radiative decay rate and detuning [same frequency units].
struct PhysicalParams {
    double n_density;
    double lambda;
    double gamma;
    double delta;
};

/// Field-atom coupling g = 3 * n_density * lambda^2 * gamma / (8 pi).
double derive_g(const PhysicalParams& p);
/// Conversion coupling per unit length kappa = g / delta (requires
/// delta != 0 and positive physical inputs).
double derive_kappa(const PhysicalParams& p);
/// Length for complete pump -> generated transfer by the cos^2 law.
double conversion_length(double kappa);
/// Length of one full conversion cycle (pump restored, diagonal sign
/// flipped).  NOTE: source texts also call *this* the "complete
/// conversion" point; the cos^2 zero at half this length is treated as
/// authoritative and both are reported.
double full_cycle_length(double kappa);

}  // namespace analytic
}  // namespace fwm
