#include "fwm/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fwm {
namespace obs {

IntensityProfile intensities(const TwoPhotonState& s) {
    const int M = s.lattice.M;
    const double dz = s.lattice.dz;
    IntensityProfile p{std::vector<double>(M, 0.0), std::vector<double>(M, 0.0),
                       std::vector<double>(M, 0.0), std::vector<double>(M, 0.0)};
    for (int l = 0; l < M; ++l) {
        for (int lp = 0; lp < M; ++lp) {
            const double wo = std::norm(s.psi_omega(l, lp));
            const double we = std::norm(s.psi_e(l, lp));
            p.i_omega1[l] += wo * dz;
            p.i_omega2[lp] += wo * dz;
            p.i_e1[l] += we * dz;
            p.i_e2[lp] += we * dz;
        }
    }
    return p;
}

std::vector<complexd> diagonal_slice(const TwoPhotonState& s) {
    std::vector<complexd> d(s.lattice.M);
    for (int l = 0; l < s.lattice.M; ++l) d[l] = s.psi_omega(l, l);
    return d;
}

std::pair<double, double> sign_flip_metric(const TwoPhotonState& state,
                                           const TwoPhotonState& reference) {
    const int M = state.lattice.M;
    if (M != reference.lattice.M)
        throw std::invalid_argument("sign_flip_metric: states live on different lattices");
    const int steps =
        static_cast<int>(std::lround((state.t - reference.t) * state.lattice.c / state.lattice.dz));

    double num_diag = 0.0, den_diag = 0.0, num_off = 0.0, den_off = 0.0;
    for (int l = 0; l < M; ++l) {
        num_diag += std::norm(state.psi_omega(l, l) + reference.psi_omega(l, l)) +
                    std::norm(state.psi_e(l, l) + reference.psi_e(l, l));
        den_diag += std::norm(reference.psi_omega(l, l)) + std::norm(reference.psi_e(l, l));
        for (int lp = 0; lp < M; ++lp) {
            if (lp == l) continue;
            const int lr = mod_cells(l - steps, M);
            const int lpr = mod_cells(lp - steps, M);
            num_off += std::norm(state.psi_omega(l, lp) - reference.psi_omega(lr, lpr)) +
                       std::norm(state.psi_e(l, lp) - reference.psi_e(lr, lpr));
            den_off += std::norm(reference.psi_omega(l, lp)) + std::norm(reference.psi_e(l, lp));
        }
    }
    auto ratio = [](double num, double den) {
        if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::sqrt(num / den);
    };
    return {ratio(num_diag, den_diag), ratio(num_off, den_off)};
}

double xicondition_residual(const ModeCoefficients& xi_t0, const ModeCoefficients& xi_tau) {
    const ModeCoefficients ref = analytic::xi_after_full_cycle(xi_t0);
    const double dx = (xi_tau.xi - ref.xi).cwiseAbs().maxCoeff();
    const double de = (xi_tau.eta - ref.eta).cwiseAbs().maxCoeff();
    return std::max(dx, de);
}

std::array<std::vector<double>, 4> manley_rowe_cells(const TwoPhotonState& s) {
    const IntensityProfile p = intensities(s);
    const int M = s.lattice.M;
    std::array<std::vector<double>, 4> q;
    for (auto& a : q) a.assign(M, 0.0);
    for (int l = 0; l < M; ++l) {
        q[0][l] = p.i_omega1[l] + p.i_e1[l];
        q[1][l] = p.i_omega2[l] + p.i_e2[l];
        q[2][l] = p.i_omega1[l] - p.i_omega2[l];
        q[3][l] = 2.0 * (std::conj(s.psi_omega(l, l)) * s.psi_e(l, l)).real();
    }
    return q;
}

std::array<double, 4> transport_residuals(const TwoPhotonState& earlier,
                                          const TwoPhotonState& later, int steps) {
    const int M = earlier.lattice.M;
    const auto q1 = manley_rowe_cells(earlier);
    const auto q2 = manley_rowe_cells(later);
    std::array<double, 4> res{};
    for (int iq = 0; iq < 4; ++iq)
        for (int l = 0; l < M; ++l)
            res[iq] = std::max(res[iq], std::abs(q2[iq][l] - q1[iq][mod_cells(l - steps, M)]));
    return res;
}

ConservationReport conservation_check(const Trajectory& traj) {
    ConservationReport rep;
    if (traj.snapshots.empty()) return rep;
    const Lattice& lat = traj.snapshots.front().lattice;
    for (const auto& s : traj.snapshots) {
        rep.norm_drift = std::max(rep.norm_drift, std::abs(total_norm(s) - 1.0));
        const auto q = manley_rowe_cells(s);
        double trace = 0.0;
        for (double v : q[3]) trace += v * lat.dz;
        rep.relative_phase_trace.push_back(trace);
    }
    for (std::size_t i = 0; i + 1 < traj.snapshots.size(); ++i) {
        const auto& a = traj.snapshots[i];
        const auto& b = traj.snapshots[i + 1];
        const int steps = static_cast<int>(std::lround((b.t - a.t) * lat.c / lat.dz));
        const auto res = transport_residuals(a, b, steps);
        for (int iq = 0; iq < 4; ++iq) rep.max_residual[iq] = std::max(rep.max_residual[iq], res[iq]);
    }
    return rep;
}

}  // namespace obs
}  // namespace fwm
