#include "fwm/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwm {
namespace analytic {

DiagProfile diagonal_of(const TwoPhotonState& s) {
    DiagProfile d(s.lattice.M);
    for (int l = 0; l < s.lattice.M; ++l) d[l] = s.psi_omega(l, l);
    return d;
}

complexd diag_psi_omega(const DiagProfile& psi0, const Lattice& lat, int l, int steps,
                        double angle) {
    return psi0[mod_cells(l - steps, lat.M)] * std::cos(angle);
}

complexd diag_psi_e(const DiagProfile& psi0, const Lattice& lat, int l, int steps, double angle) {
    return complexd(0.0, -1.0) * psi0[mod_cells(l - steps, lat.M)] * std::sin(angle);
}

IntensityPair intensity_omega(const std::vector<double>& psi0, const Lattice& lat, int l,
                              int steps, double angle) {
    const double p = psi0[mod_cells(l - steps, lat.M)];
    const double c = std::cos(angle), s = std::sin(angle);
    return IntensityPair{p * c * c, p * s * s};
}

ModeCoefficients xi_after_full_cycle(const ModeCoefficients& m0) {
    const Lattice& lat = m0.lattice;
    const int M = lat.M;
    ModeCoefficients out{lat, m0.xi, m0.eta};
    // Anti-diagonal sector sums over the pair-sum residue (k + k') mod M.
    // Mode number k(a) == a (mod M), so the residue is just (a + b) mod M.
    auto reflect = [&](const Grid& in, Grid& o) {
        std::vector<complexd> sector(M, complexd(0.0));
        for (int a = 0; a < M; ++a)
            for (int b = 0; b < M; ++b) sector[(a + b) % M] += in(a, b);
        for (int a = 0; a < M; ++a)
            for (int b = 0; b < M; ++b) o(a, b) = in(a, b) - 2.0 / M * sector[(a + b) % M];
    };
    reflect(m0.xi, out.xi);
    reflect(m0.eta, out.eta);
    return out;
}

DiagProfile soliton_superposition(const TwoPhotonState& s, double angle) {
    const int M = s.lattice.M;
    DiagProfile phi(M);
    const double c = std::cos(angle);
    const complexd is(0.0, std::sin(angle));
    for (int l = 0; l < M; ++l) phi[l] = c * s.psi_omega(l, l) + is * s.psi_e(l, l);
    return phi;
}

DiagProfile soliton_orthogonal(const TwoPhotonState& s, double angle) {
    const int M = s.lattice.M;
    DiagProfile phi(M);
    const double sn = std::sin(angle);
    const complexd ic(0.0, std::cos(angle));
    for (int l = 0; l < M; ++l) phi[l] = sn * s.psi_omega(l, l) - ic * s.psi_e(l, l);
    return phi;
}

namespace {
void check_params(const PhysicalParams& p) {
    if (!(p.n_density > 0.0) || !(p.lambda > 0.0) || !(p.gamma > 0.0))
        throw std::invalid_argument("physical params: density, wavelength, decay rate must be > 0");
    if (p.delta == 0.0) throw std::invalid_argument("physical params: detuning must be nonzero");
}
}  // namespace

double derive_g(const PhysicalParams& p) {
    check_params(p);
    return 3.0 * p.n_density * p.lambda * p.lambda * p.gamma / (8.0 * std::numbers::pi);
}

double derive_kappa(const PhysicalParams& p) { return derive_g(p) / p.delta; }

double conversion_length(double kappa) {
    if (kappa == 0.0) throw std::invalid_argument("conversion_length: kappa must be nonzero");
    return std::numbers::pi / (2.0 * kappa);
}

double full_cycle_length(double kappa) {
    if (kappa == 0.0) throw std::invalid_argument("full_cycle_length: kappa must be nonzero");
    return std::numbers::pi / kappa;
}

}  // namespace analytic
}  // namespace fwm
