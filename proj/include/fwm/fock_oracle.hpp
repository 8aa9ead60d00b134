#pragma once
// Brute-force many-body reference: truncated Fock space over a tiny
// cell ring (M <= 5), with the full interaction Hamiltonian
//   H_int = kappa*c * sum_l (b+_{O1,l} b+_{O2,l} b_{E1,l} b_{E2,l} + h.c.) * Lambda_l
// where Lambda_l is the Moore-Penrose pseudoinverse of the local
// number operator n_{O1,l} + n_{E1,l} (eigenvalue 1/n on n > 0
// eigenspaces, 0 on the kernel, where the numerator annihilates
// anyway).  The numerator commutes with that number operator, so the
// product is Hermitian with no ordering ambiguity.  The kinetic part
// is one-body with mode phases omega_k per species; exp(-i H_kin dz/c)
// is an exact one-cell cyclic shift.
//
// The crosscheck advances the Fock vector in whole-cell steps,
//   v <- exp(-i H_int dz/c) * exp(-i H_kin dz/c) * v,
// each factor an exact Hermitian-eigendecomposition exponential, and
// compares against the grid propagator mapped into Fock amplitudes.
// Stepping at cell boundaries (rather than exponentiating
// H_kin + H_int jointly) matches the model's definition: between
// boundaries the finite-band one-body kinetic interpolation acquires
// pair-sum aliasing phases that the ring model does not have (see
// mode_oracle).  Everything the oracle is meant to test — the
// many-body H construction, the pseudoinverse identity, sector
// closure, constants of motion, the two-photon reduction — is
// exercised without assuming the grid representation.

#include "fwm/lattice.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace fwm {
namespace fock {

enum Species : int { SpOmega1 = 0, SpOmega2 = 1, SpE1 = 2, SpE2 = 3 };

/// Occupation-number basis with fixed species totals
/// N1 = sum(n_O1 + n_E1), N2 = sum(n_O2 + n_E2).
struct FockBasis {
    Lattice lattice;
    int n1_total = 1;
    int n2_total = 1;
    int nmax_per_mode = 1;
    std::vector<std::vector<std::uint8_t>> states;  ///< occupation vectors, length 4*M
    std::unordered_map<std::uint64_t, int> lookup;  ///< packed occupation -> index

    int dim() const { return static_cast<int>(states.size()); }
    int slot(Species sp, int cell) const { return static_cast<int>(sp) * lattice.M + cell; }
};

/// Enumerate the basis (duplicate-free, deterministic order).
/// Guards: M <= 5; n1_total + n2_total <= 4; dimension <= 10^4.
/// nmax_per_mode defaults to max(n1_total, n2_total), which the
/// number-conserving dynamics can never exceed (exact truncation).
FockBasis make_basis(const Lattice& lat, int n1_total = 1, int n2_total = 1,
                     int nmax_per_mode = -1);

using HamiltonianMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

HamiltonianMatrix build_interaction(const FockBasis& basis, double kappa, double c);
HamiltonianMatrix build_kinetic(const FockBasis& basis);

/// e^{-iHt} state0 via Hermitian eigendecomposition; rejects
/// non-Hermitian H (tolerance 1e-12 relative to the largest entry).
StateVector evolve_exact(const HamiltonianMatrix& H, const StateVector& state0, double t);

/// Pair-swap numerator num_l = b+_{O1,l} b+_{O2,l} b_{E1,l} b_{E2,l}
/// applied to a vector (used for the fourth constant of motion).
StateVector apply_pair_swap(const FockBasis& basis, int cell, const StateVector& v);

/// Two-photon grid state -> Fock amplitudes (c = psi * dz on the
/// |O1@l, O2@l'> and |E1@l, E2@l'> basis states) and back.
StateVector encode_two_photon(const FockBasis& basis, const TwoPhotonState& s);
TwoPhotonState decode_two_photon(const FockBasis& basis, const StateVector& v, double t);

/// Largest |amplitude| on mixed-sector basis states (one pump photon
/// paired with one generated photon).
double mixed_sector_leakage(const FockBasis& basis, const StateVector& v);

/// max_l || (Lambda_l - 1) P_l v || with P_l the projector onto basis
/// states with n_{O1,l} + n_{E1,l} > 0 (the operative content of
/// "Lambda acts as the identity on the physical sector").
double lambda_identity_residual(const FockBasis& basis, const StateVector& v);

/// Per-cell expectations of the four transported quantities:
/// {n_O1 + n_E1, n_O2 + n_E2, n_O1 - n_O2, pair-swap + h.c.}.
std::array<std::vector<double>, 4> manley_rowe_cells(const FockBasis& basis,
                                                     const StateVector& v);

struct CrosscheckConfig {
    Lattice lattice{3, 1.0, 1.0};
    double kappa = 0.2;
    int n_steps = 30;
    double center = 1.0;   ///< Gaussian envelope center (cells)
    double width = 0.8;    ///< Gaussian envelope width (cells)
    bool start_in_e = false;  ///< put the initial pair in the generated fields
};

struct CrosscheckReport {
    double max_deviation = 0.0;       ///< max |fock - propagator| amplitude over the run
    double max_leakage = 0.0;         ///< max mixed-sector amplitude
    double max_lambda_residual = 0.0; ///< max Lambda-identity residual
    double max_transport_residual = 0.0;  ///< worst per-step constant-of-motion transport defect
    double runtime_seconds = 0.0;
    int dim = 0;
};

CrosscheckReport crosscheck(const CrosscheckConfig& cfg);

}  // namespace fock
}  // namespace fwm
