#include "fwm/mode_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwm {
namespace mode_oracle {

ModeODESystem make_system(const Lattice& lat, double kappa) {
    validate(lat);
    ModeODESystem sys{lat, kappa, std::vector<double>(lat.M)};
    const double w0 = 2.0 * std::numbers::pi * lat.c / lat.length();
    for (int a = 0; a < lat.M; ++a) sys.omega[a] = w0 * mode_number(lat, a);
    return sys;
}

double pair_phase(const ModeODESystem& sys, int a, int b) {
    const double w0 = 2.0 * std::numbers::pi * sys.lattice.c / sys.lattice.length();
    return w0 * wrap_mode(sys.lattice, mode_number(sys.lattice, a) + mode_number(sys.lattice, b));
}

namespace {

struct Workspace {
    Eigen::MatrixXd W;             // pair kinetic phase per (a, b)
    std::vector<complexd> sector;  // per-residue sums
};

Workspace make_workspace(const ModeODESystem& sys) {
    const int M = sys.lattice.M;
    Workspace ws{Eigen::MatrixXd(M, M), std::vector<complexd>(M)};
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) ws.W(a, b) = pair_phase(sys, a, b);
    return ws;
}

// dxi = -i W xi - i (kappa c / M) S[eta],  deta symmetric, where S sums
// each pair-sum sector (a + b) mod M and broadcasts it back.
void eval_rhs(const ModeODESystem& sys, Workspace& ws, const Grid& xi, const Grid& eta, Grid& dxi,
              Grid& deta) {
    const int M = sys.lattice.M;
    const complexd mi(0.0, -1.0);
    const double cpl = sys.kappa * sys.lattice.c / M;

    auto sector_sums = [&](const Grid& g) {
        std::fill(ws.sector.begin(), ws.sector.end(), complexd(0.0));
        for (int b = 0; b < M; ++b)
            for (int a = 0; a < M; ++a) ws.sector[(a + b) % M] += g(a, b);
    };
    sector_sums(eta);
    for (int b = 0; b < M; ++b)
        for (int a = 0; a < M; ++a)
            dxi(a, b) = mi * (ws.W(a, b) * xi(a, b) + cpl * ws.sector[(a + b) % M]);
    sector_sums(xi);
    for (int b = 0; b < M; ++b)
        for (int a = 0; a < M; ++a)
            deta(a, b) = mi * (ws.W(a, b) * eta(a, b) + cpl * ws.sector[(a + b) % M]);
}

}  // namespace

ModeCoefficients rhs(const ModeODESystem& sys, const ModeCoefficients& m) {
    Workspace ws = make_workspace(sys);
    ModeCoefficients out{m.lattice, Grid(m.lattice.M, m.lattice.M), Grid(m.lattice.M, m.lattice.M)};
    eval_rhs(sys, ws, m.xi, m.eta, out.xi, out.eta);
    return out;
}

ModeCoefficients integrate(const ModeODESystem& sys, const ModeCoefficients& m0, double t_final,
                           double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(dt * sys.kappa * sys.lattice.c < 0.1))
        throw std::invalid_argument("integrate: step too large (require dt*kappa*c < 0.1)");
    if (t_final < 0.0) throw std::invalid_argument("integrate: t_final must be >= 0");

    const long n = std::lround(t_final / dt);
    if (n == 0) return m0;
    const double h = t_final / static_cast<double>(n);

    Workspace ws = make_workspace(sys);
    const int M = sys.lattice.M;
    Grid xi = m0.xi, eta = m0.eta;
    Grid k1x(M, M), k1e(M, M), k2x(M, M), k2e(M, M), k3x(M, M), k3e(M, M), k4x(M, M), k4e(M, M);
    Grid tx(M, M), te(M, M);

    for (long s = 0; s < n; ++s) {
        eval_rhs(sys, ws, xi, eta, k1x, k1e);
        tx = xi + (h / 2) * k1x;
        te = eta + (h / 2) * k1e;
        eval_rhs(sys, ws, tx, te, k2x, k2e);
        tx = xi + (h / 2) * k2x;
        te = eta + (h / 2) * k2e;
        eval_rhs(sys, ws, tx, te, k3x, k3e);
        tx = xi + h * k3x;
        te = eta + h * k3e;
        eval_rhs(sys, ws, tx, te, k4x, k4e);
        xi += (h / 6) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        eta += (h / 6) * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
    }
    return ModeCoefficients{m0.lattice, xi, eta};
}

double l2_distance(const TwoPhotonState& a, const TwoPhotonState& b) {
    return std::sqrt((a.psi_omega - b.psi_omega).squaredNorm() +
                     (a.psi_e - b.psi_e).squaredNorm());
}

}  // namespace mode_oracle
}  // namespace fwm
