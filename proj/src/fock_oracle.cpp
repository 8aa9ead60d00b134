#include "fwm/fock_oracle.hpp"

#include "fwm/propagator.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwm {
namespace fock {

namespace {

std::uint64_t pack(const std::vector<std::uint8_t>& occ) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) key |= static_cast<std::uint64_t>(occ[i]) << (3 * i);
    return key;
}

// Enumerate occupations of `slots` cells summing to `total`, each <= nmax.
void enumerate_species(int slots, int total, int nmax, std::vector<std::uint8_t>& cur,
                       std::vector<std::vector<std::uint8_t>>& out) {
    if (static_cast<int>(cur.size()) == slots) {
        if (total == 0) out.push_back(cur);
        return;
    }
    const int lo = 0;
    const int hi = std::min(nmax, total);
    for (int n = lo; n <= hi; ++n) {
        cur.push_back(static_cast<std::uint8_t>(n));
        enumerate_species(slots, total - n, nmax, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FockBasis make_basis(const Lattice& lat, int n1_total, int n2_total, int nmax_per_mode) {
    validate(lat);
    if (lat.M > 5) throw std::invalid_argument("fock basis: M must be <= 5");
    if (n1_total < 0 || n2_total < 0 || n1_total + n2_total > 4)
        throw std::invalid_argument("fock basis: species totals must be >= 0 and sum to <= 4");
    if (nmax_per_mode < 0) nmax_per_mode = std::max({n1_total, n2_total, 1});

    // Species-1 photons occupy the O1/E1 slots (2M of them), species-2
    // the O2/E2 slots; enumerate each independently and combine.
    std::vector<std::vector<std::uint8_t>> occ1, occ2;
    std::vector<std::uint8_t> cur;
    enumerate_species(2 * lat.M, n1_total, nmax_per_mode, cur, occ1);
    enumerate_species(2 * lat.M, n2_total, nmax_per_mode, cur, occ2);

    FockBasis basis;
    basis.lattice = lat;
    basis.n1_total = n1_total;
    basis.n2_total = n2_total;
    basis.nmax_per_mode = nmax_per_mode;
    const std::size_t dim = occ1.size() * occ2.size();
    if (dim > 10000) throw std::invalid_argument("fock basis: dimension exceeds 10^4");
    basis.states.reserve(dim);
    // Slot layout per state vector: [O1 cells][O2 cells][E1 cells][E2 cells].
    for (const auto& s1 : occ1) {
        for (const auto& s2 : occ2) {
            std::vector<std::uint8_t> occ(4 * lat.M, 0);
            for (int l = 0; l < lat.M; ++l) {
                occ[SpOmega1 * lat.M + l] = s1[l];          // O1 from first half of s1
                occ[SpE1 * lat.M + l] = s1[lat.M + l];      // E1 from second half
                occ[SpOmega2 * lat.M + l] = s2[l];
                occ[SpE2 * lat.M + l] = s2[lat.M + l];
            }
            basis.lookup.emplace(pack(occ), static_cast<int>(basis.states.size()));
            basis.states.push_back(std::move(occ));
        }
    }
    return basis;
}

namespace {

// Apply b_{slot} then b+_{slot2} to |occ>, returning the matrix factor
// and mutating occ; returns 0 if the move is impossible.
double move_quantum(std::vector<std::uint8_t>& occ, int from, int to, int nmax) {
    if (occ[from] == 0) return 0.0;
    double amp = std::sqrt(static_cast<double>(occ[from]));
    occ[from] -= 1;
    if (occ[to] >= nmax) return 0.0;  // cannot happen for number-conserving H; guard anyway
    amp *= std::sqrt(static_cast<double>(occ[to] + 1));
    occ[to] += 1;
    return amp;
}

}  // namespace

HamiltonianMatrix build_interaction(const FockBasis& basis, double kappa, double c) {
    const int M = basis.lattice.M;
    const int D = basis.dim();
    HamiltonianMatrix H = HamiltonianMatrix::Zero(D, D);
    for (int j = 0; j < D; ++j) {
        const auto& occ = basis.states[j];
        for (int l = 0; l < M; ++l) {
            const int nO1 = occ[basis.slot(SpOmega1, l)], nO2 = occ[basis.slot(SpOmega2, l)];
            const int nE1 = occ[basis.slot(SpE1, l)], nE2 = occ[basis.slot(SpE2, l)];
            const int den = nO1 + nE1;  // local pump + generated number, species 1
            if (den == 0) continue;     // Lambda kernel; numerator annihilates there too
            const double lam = 1.0 / den;
            // num_l: E1 E2 -> O1 O2
            if (nE1 > 0 && nE2 > 0) {
                auto to = occ;
                to[basis.slot(SpE1, l)] -= 1;
                to[basis.slot(SpE2, l)] -= 1;
                to[basis.slot(SpOmega1, l)] += 1;
                to[basis.slot(SpOmega2, l)] += 1;
                const double amp = std::sqrt(double(nE1) * nE2 * (nO1 + 1) * (nO2 + 1));
                H(basis.lookup.at(pack(to)), j) += kappa * c * lam * amp;
            }
            // num_l^+: O1 O2 -> E1 E2
            if (nO1 > 0 && nO2 > 0) {
                auto to = occ;
                to[basis.slot(SpOmega1, l)] -= 1;
                to[basis.slot(SpOmega2, l)] -= 1;
                to[basis.slot(SpE1, l)] += 1;
                to[basis.slot(SpE2, l)] += 1;
                const double amp = std::sqrt(double(nO1) * nO2 * (nE1 + 1) * (nE2 + 1));
                H(basis.lookup.at(pack(to)), j) += kappa * c * lam * amp;
            }
        }
    }
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-14)
        throw std::runtime_error("build_interaction: result is not Hermitian (construction bug)");
    return H;
}

HamiltonianMatrix build_kinetic(const FockBasis& basis) {
    const Lattice& lat = basis.lattice;
    const int M = lat.M;
    const int D = basis.dim();
    // One-body cell-space kinetic T[a2,a] = (1/M) sum_k omega_k e^{2pi i k (a2-a)/M}.
    Eigen::MatrixXcd T(M, M);
    const double w0 = 2.0 * std::numbers::pi * lat.c / lat.length();
    for (int a2 = 0; a2 < M; ++a2) {
        for (int a = 0; a < M; ++a) {
            complexd sum = 0.0;
            for (int idx = 0; idx < M; ++idx) {
                const int k = mode_number(lat, idx);
                const double ph = 2.0 * std::numbers::pi * k * (a2 - a) / M;
                sum += w0 * k * complexd(std::cos(ph), std::sin(ph));
            }
            T(a2, a) = sum / static_cast<double>(M);
        }
    }
    HamiltonianMatrix H = HamiltonianMatrix::Zero(D, D);
    for (int j = 0; j < D; ++j) {
        for (int sp = 0; sp < 4; ++sp) {
            for (int a = 0; a < M; ++a) {
                if (basis.states[j][sp * M + a] == 0) continue;
                for (int a2 = 0; a2 < M; ++a2) {
                    auto occ = basis.states[j];
                    const double amp = move_quantum(occ, sp * M + a, sp * M + a2,
                                                    basis.nmax_per_mode);
                    if (amp == 0.0) continue;
                    H(basis.lookup.at(pack(occ)), j) += T(a2, a) * amp;
                }
            }
        }
    }
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("build_kinetic: result is not Hermitian (construction bug)");
    return H;
}

StateVector evolve_exact(const HamiltonianMatrix& H, const StateVector& state0, double t) {
    if (H.rows() != H.cols() || H.rows() != state0.size())
        throw std::invalid_argument("evolve_exact: dimension mismatch");
    if (H.rows() > 10000) throw std::invalid_argument("evolve_exact: dimension exceeds 10^4");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("evolve_exact: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<HamiltonianMatrix> es(H);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const HamiltonianMatrix& V = es.eigenvectors();
    StateVector w = V.adjoint() * state0;
    for (int i = 0; i < w.size(); ++i) {
        const double ph = -lam[i] * t;
        w[i] *= complexd(std::cos(ph), std::sin(ph));
    }
    return V * w;
}

StateVector apply_pair_swap(const FockBasis& basis, int cell, const StateVector& v) {
    StateVector out = StateVector::Zero(basis.dim());
    for (int j = 0; j < basis.dim(); ++j) {
        if (v[j] == complexd(0.0)) continue;
        const auto& occ = basis.states[j];
        const int nE1 = occ[basis.slot(SpE1, cell)], nE2 = occ[basis.slot(SpE2, cell)];
        if (nE1 == 0 || nE2 == 0) continue;
        const int nO1 = occ[basis.slot(SpOmega1, cell)], nO2 = occ[basis.slot(SpOmega2, cell)];
        auto to = occ;
        to[basis.slot(SpE1, cell)] -= 1;
        to[basis.slot(SpE2, cell)] -= 1;
        to[basis.slot(SpOmega1, cell)] += 1;
        to[basis.slot(SpOmega2, cell)] += 1;
        const double amp = std::sqrt(double(nE1) * nE2 * (nO1 + 1) * (nO2 + 1));
        out[basis.lookup.at(pack(to))] += amp * v[j];
    }
    return out;
}

StateVector encode_two_photon(const FockBasis& basis, const TwoPhotonState& s) {
    if (basis.n1_total != 1 || basis.n2_total != 1)
        throw std::invalid_argument("encode_two_photon: basis must have N1 = N2 = 1");
    const Lattice& lat = basis.lattice;
    const int M = lat.M;
    StateVector v = StateVector::Zero(basis.dim());
    std::vector<std::uint8_t> occ(4 * M, 0);
    for (int a = 0; a < M; ++a) {
        for (int b = 0; b < M; ++b) {
            std::fill(occ.begin(), occ.end(), 0);
            occ[basis.slot(SpOmega1, a)] = 1;
            occ[basis.slot(SpOmega2, b)] = 1;
            v[basis.lookup.at(pack(occ))] = s.psi_omega(a, b) * lat.dz;
            std::fill(occ.begin(), occ.end(), 0);
            occ[basis.slot(SpE1, a)] = 1;
            occ[basis.slot(SpE2, b)] = 1;
            v[basis.lookup.at(pack(occ))] = s.psi_e(a, b) * lat.dz;
        }
    }
    return v;
}

TwoPhotonState decode_two_photon(const FockBasis& basis, const StateVector& v, double t) {
    if (basis.n1_total != 1 || basis.n2_total != 1)
        throw std::invalid_argument("decode_two_photon: basis must have N1 = N2 = 1");
    const Lattice& lat = basis.lattice;
    const int M = lat.M;
    TwoPhotonState s{lat, Grid::Zero(M, M), Grid::Zero(M, M), t};
    std::vector<std::uint8_t> occ(4 * M, 0);
    for (int a = 0; a < M; ++a) {
        for (int b = 0; b < M; ++b) {
            std::fill(occ.begin(), occ.end(), 0);
            occ[basis.slot(SpOmega1, a)] = 1;
            occ[basis.slot(SpOmega2, b)] = 1;
            s.psi_omega(a, b) = v[basis.lookup.at(pack(occ))] / lat.dz;
            std::fill(occ.begin(), occ.end(), 0);
            occ[basis.slot(SpE1, a)] = 1;
            occ[basis.slot(SpE2, b)] = 1;
            s.psi_e(a, b) = v[basis.lookup.at(pack(occ))] / lat.dz;
        }
    }
    return s;
}

double mixed_sector_leakage(const FockBasis& basis, const StateVector& v) {
    const int M = basis.lattice.M;
    double leak = 0.0;
    for (int j = 0; j < basis.dim(); ++j) {
        const auto& occ = basis.states[j];
        int nO1 = 0, nO2 = 0, nE1 = 0, nE2 = 0;
        for (int l = 0; l < M; ++l) {
            nO1 += occ[basis.slot(SpOmega1, l)];
            nO2 += occ[basis.slot(SpOmega2, l)];
            nE1 += occ[basis.slot(SpE1, l)];
            nE2 += occ[basis.slot(SpE2, l)];
        }
        // Mixed: a pump photon of one species paired with a generated
        // photon of the other (nO1 with nE2, or nE1 with nO2).
        if ((nO1 > 0 && nE2 > 0) || (nE1 > 0 && nO2 > 0)) leak = std::max(leak, std::abs(v[j]));
    }
    return leak;
}

double lambda_identity_residual(const FockBasis& basis, const StateVector& v) {
    const int M = basis.lattice.M;
    double worst = 0.0;
    for (int l = 0; l < M; ++l) {
        double r2 = 0.0;
        for (int j = 0; j < basis.dim(); ++j) {
            const auto& occ = basis.states[j];
            const int den = occ[basis.slot(SpOmega1, l)] + occ[basis.slot(SpE1, l)];
            if (den == 0) continue;
            const double d = (1.0 / den - 1.0) * std::abs(v[j]);
            r2 += d * d;
        }
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst;
}

std::array<std::vector<double>, 4> manley_rowe_cells(const FockBasis& basis,
                                                     const StateVector& v) {
    const int M = basis.lattice.M;
    std::array<std::vector<double>, 4> q;
    for (auto& a : q) a.assign(M, 0.0);
    for (int j = 0; j < basis.dim(); ++j) {
        const double p = std::norm(v[j]);
        if (p == 0.0) continue;
        const auto& occ = basis.states[j];
        for (int l = 0; l < M; ++l) {
            const int nO1 = occ[basis.slot(SpOmega1, l)], nO2 = occ[basis.slot(SpOmega2, l)];
            const int nE1 = occ[basis.slot(SpE1, l)], nE2 = occ[basis.slot(SpE2, l)];
            q[0][l] += p * (nO1 + nE1);
            q[1][l] += p * (nO2 + nE2);
            q[2][l] += p * (nO1 - nO2);
        }
    }
    for (int l = 0; l < M; ++l) {
        const StateVector w = apply_pair_swap(basis, l, v);
        q[3][l] = 2.0 * v.dot(w).real();  // <v| num_l |v> + c.c.
    }
    return q;
}

CrosscheckReport crosscheck(const CrosscheckConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const Lattice& lat = cfg.lattice;

    const FockBasis basis = make_basis(lat, 1, 1);
    const HamiltonianMatrix Hint = build_interaction(basis, cfg.kappa, lat.c);
    const HamiltonianMatrix Hkin = build_kinetic(basis);
    const double dt = lat.dz / lat.c;

    // Exact one-step propagators via Hermitian eigendecomposition.
    auto matrix_exponential = [&](const HamiltonianMatrix& H) {
        Eigen::SelfAdjointEigenSolver<HamiltonianMatrix> es(H);
        const Eigen::VectorXd& lam = es.eigenvalues();
        const HamiltonianMatrix& V = es.eigenvectors();
        Eigen::VectorXcd ph(lam.size());
        for (int i = 0; i < lam.size(); ++i)
            ph[i] = complexd(std::cos(-lam[i] * dt), std::sin(-lam[i] * dt));
        return HamiltonianMatrix(V * ph.asDiagonal() * V.adjoint());
    };
    const HamiltonianMatrix Ukin = matrix_exponential(Hkin);
    const HamiltonianMatrix Uint = matrix_exponential(Hint);

    Envelope env = make_gaussian_envelope(lat, cfg.center, cfg.width);
    TwoPhotonState grid_state = separable_input(env, env);
    if (cfg.start_in_e) grid_state.psi_omega.swap(grid_state.psi_e);
    StateVector v = encode_two_photon(basis, grid_state);

    StepPlan plan{cfg.kappa, dt, cfg.n_steps, full_mask(lat)};
    CrosscheckReport rep;
    rep.dim = basis.dim();
    auto q_prev = manley_rowe_cells(basis, v);
    for (int n = 0; n < cfg.n_steps; ++n) {
        v = Uint * (Ukin * v);
        step_inplace(grid_state, plan);
        const StateVector ref = encode_two_photon(basis, grid_state);
        rep.max_deviation = std::max(rep.max_deviation, (v - ref).cwiseAbs().maxCoeff());
        rep.max_leakage = std::max(rep.max_leakage, mixed_sector_leakage(basis, v));
        rep.max_lambda_residual =
            std::max(rep.max_lambda_residual, lambda_identity_residual(basis, v));
        const auto q_now = manley_rowe_cells(basis, v);
        for (int iq = 0; iq < 4; ++iq)
            for (int l = 0; l < lat.M; ++l)
                rep.max_transport_residual =
                    std::max(rep.max_transport_residual,
                             std::abs(q_now[iq][l] - q_prev[iq][mod_cells(l - 1, lat.M)]));
        q_prev = q_now;
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

}  // namespace fock
}  // namespace fwm
