#pragma once
// Periodic cell lattice, single-photon envelopes, the two-photon state
// (pump pair / generated pair amplitude grids) and its mode-space
// representation.
//
// Conventions
//   - M cells of width dz on a ring, total length L = M*dz.
//   - Envelope normalization: sum_l |f0[l]|^2 * dz = 1.
//   - Two-photon grids psi[l,l'] are amplitude densities:
//     sum_{l,l'} (|psi_omega|^2 + |psi_e|^2) * dz^2 = 1.
//   - Mode arrays are stored in DFT order: array row a corresponds to
//     mode number k(a) = a for a <= (M-1)/2, else a - M.  For odd
//     M = 2N+1 this is the symmetric band {-N..N}; even M uses
//     {-M/2..M/2-1}.  NOTE: even M leaves the -M/2 mode without a
//     positive partner (omega_{-k} = -omega_k fails at that edge); odd
//     M is the supported default and even M is accepted with this
//     caveat.
//   - Mode transform (fixed so that the inverse is exact and Parseval
//     holds with no extra factors):
//       xi[k,k']  = (dz^2/L) * sum_{l,l'} psi[l,l'] e^{-2pi i(kl+k'l')/M}
//       psi[l,l'] = (1/L)    * sum_{k,k'} xi[k,k'] e^{+2pi i(kl+k'l')/M}
//     giving sum |xi|^2 + |eta|^2 = sum (|psi_omega|^2+|psi_e|^2) dz^2.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace fwm {

using complexd = std::complex<double>;
using Grid = Eigen::MatrixXcd;

/// Periodic cell lattice: M cells of width dz, propagation speed c.
struct Lattice {
    int M = 45;       ///< number of cells (and modes)
    double dz = 1.0;  ///< cell width
    double c = 1.0;   ///< propagation speed

    double length() const { return M * dz; }
    bool odd() const { return M % 2 == 1; }
    /// Highest mode number in the centered band.
    int max_mode() const { return (M - 1) / 2; }
};

/// Validate lattice parameters; throws std::invalid_argument on bad input.
void validate(const Lattice& lat);

/// Mode number for DFT-order array index a (0 <= a < M).
int mode_number(const Lattice& lat, int a);
/// DFT-order array index for mode number k in the centered band.
int mode_index(const Lattice& lat, int k);
/// Reduce an arbitrary integer mode sum into the centered band (mod M).
int wrap_mode(const Lattice& lat, int s);
/// Non-negative residue mod M (works for negative x).
inline int mod_cells(int x, int M) { return ((x % M) + M) % M; }

/// Single-photon spatial amplitude per cell; sum |f0|^2 dz = 1.
struct Envelope {
    Lattice lattice;
    std::vector<complexd> f0;
};

/// Norm integral sum |f0|^2 dz of an envelope.
double envelope_norm(const Envelope& env);

/// Gaussian envelope exp(-d(l,center)^2 / (2 width^2)) with d the
/// periodic minimum-image distance, normalized.  Very small widths
/// degrade gracefully to a point at the nearest cell (the largest
/// sample is pinned to 1 before normalizing, so nothing underflows).
Envelope make_gaussian_envelope(const Lattice& lat, double center, double width);

/// Point envelope: all amplitude in one cell, f0[cell] = 1/sqrt(dz).
Envelope make_point_envelope(const Lattice& lat, int cell);

/// Joint amplitude grids for the pump pair (psi_omega) and the
/// generated pair (psi_e); psi_x[l, l'] is the amplitude density for
/// photon 1 of that pair in cell l and photon 2 in cell l'.
struct TwoPhotonState {
    Lattice lattice;
    Grid psi_omega;
    Grid psi_e;
    double t = 0.0;
};

/// Mode-space coefficients xi (pump pair) / eta (generated pair) in
/// DFT row order (see header comment).
struct ModeCoefficients {
    Lattice lattice;
    Grid xi;
    Grid eta;
};

/// Total norm sum (|psi_omega|^2 + |psi_e|^2) dz^2.
double total_norm(const TwoPhotonState& s);
/// Mode-space norm sum |xi|^2 + |eta|^2.
double mode_norm(const ModeCoefficients& m);

/// Product input: pump photons in uncorrelated envelopes e1, e2;
/// generated pair empty.  psi_omega[l,l'] = e1.f0[l] * e2.f0[l'].
TwoPhotonState separable_input(const Envelope& e1, const Envelope& e2);

/// Perfectly position-correlated input: psi_omega[l,l'] =
/// delta_{ll'} phi0.f0[l] / sqrt(dz), normalized; generated pair empty.
TwoPhotonState diagonal_entangled_input(const Envelope& phi0);

/// Forward mode transform (convention in the header comment).
ModeCoefficients to_modes(const TwoPhotonState& s);
/// Exact inverse of to_modes.
TwoPhotonState from_modes(const ModeCoefficients& m);

}  // namespace fwm
