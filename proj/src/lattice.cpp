#include "fwm/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwm {

void validate(const Lattice& lat) {
    if (lat.M < 1) throw std::invalid_argument("lattice: cell count M must be >= 1");
    if (!(lat.dz > 0.0)) throw std::invalid_argument("lattice: cell width dz must be > 0");
    if (!(lat.c > 0.0)) throw std::invalid_argument("lattice: speed c must be > 0");
}

int mode_number(const Lattice& lat, int a) {
    if (a < 0 || a >= lat.M) throw std::out_of_range("mode_number: index outside [0, M)");
    return a <= (lat.M - 1) / 2 ? a : a - lat.M;
}

int mode_index(const Lattice& lat, int k) {
    const int lo = lat.odd() ? -lat.max_mode() : -lat.M / 2;
    if (k < lo || k > lat.max_mode()) throw std::out_of_range("mode_index: mode outside centered band");
    return k >= 0 ? k : k + lat.M;
}

int wrap_mode(const Lattice& lat, int s) {
    const int r = mod_cells(s, lat.M);
    return r <= (lat.M - 1) / 2 ? r : r - lat.M;
}

double envelope_norm(const Envelope& env) {
    double n = 0.0;
    for (const auto& v : env.f0) n += std::norm(v);
    return n * env.lattice.dz;
}

Envelope make_gaussian_envelope(const Lattice& lat, double center, double width) {
    validate(lat);
    if (!(width > 0.0)) throw std::invalid_argument("make_gaussian_envelope: width must be > 0");
    if (center < 0.0 || center >= lat.M)
        throw std::invalid_argument("make_gaussian_envelope: center must lie in [0, M)");

    // Periodic minimum-image distance in cells, then pin the smallest
    // exponent to zero so a width -> 0+ limit lands on the nearest cell
    // instead of underflowing everywhere.
    std::vector<double> d2(lat.M);
    double d2min = 0.0;
    for (int l = 0; l < lat.M; ++l) {
        double d = std::fmod(std::abs(l - center), static_cast<double>(lat.M));
        d = std::min(d, lat.M - d);
        d2[l] = d * d;
        d2min = l == 0 ? d2[l] : std::min(d2min, d2[l]);
    }
    Envelope env{lat, std::vector<complexd>(lat.M)};
    double norm2 = 0.0;
    for (int l = 0; l < lat.M; ++l) {
        const double v = std::exp(-(d2[l] - d2min) / (2.0 * width * width));
        env.f0[l] = v;
        norm2 += v * v;
    }
    const double scale = 1.0 / std::sqrt(norm2 * lat.dz);
    for (auto& v : env.f0) v *= scale;
    return env;
}

Envelope make_point_envelope(const Lattice& lat, int cell) {
    validate(lat);
    if (cell < 0 || cell >= lat.M)
        throw std::invalid_argument("make_point_envelope: cell outside [0, M)");
    Envelope env{lat, std::vector<complexd>(lat.M, 0.0)};
    env.f0[cell] = 1.0 / std::sqrt(lat.dz);
    return env;
}

double total_norm(const TwoPhotonState& s) {
    return (s.psi_omega.squaredNorm() + s.psi_e.squaredNorm()) * s.lattice.dz * s.lattice.dz;
}

double mode_norm(const ModeCoefficients& m) {
    return m.xi.squaredNorm() + m.eta.squaredNorm();
}

TwoPhotonState separable_input(const Envelope& e1, const Envelope& e2) {
    if (e1.lattice.M != e2.lattice.M || e1.lattice.dz != e2.lattice.dz || e1.lattice.c != e2.lattice.c)
        throw std::invalid_argument("separable_input: envelopes live on different lattices");
    const Lattice& lat = e1.lattice;
    TwoPhotonState s{lat, Grid(lat.M, lat.M), Grid::Zero(lat.M, lat.M), 0.0};
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp) s.psi_omega(l, lp) = e1.f0[l] * e2.f0[lp];
    return s;
}

TwoPhotonState diagonal_entangled_input(const Envelope& phi0) {
    const Lattice& lat = phi0.lattice;
    TwoPhotonState s{lat, Grid::Zero(lat.M, lat.M), Grid::Zero(lat.M, lat.M), 0.0};
    double norm2 = 0.0;
    for (const auto& v : phi0.f0) norm2 += std::norm(v);
    if (norm2 == 0.0) throw std::invalid_argument("diagonal_entangled_input: zero envelope");
    for (int l = 0; l < lat.M; ++l) s.psi_omega(l, l) = phi0.f0[l] / std::sqrt(lat.dz);
    // Exact unit norm even if the envelope normalization carried roundoff.
    const double n = total_norm(s);
    s.psi_omega *= 1.0 / std::sqrt(n);
    return s;
}

namespace {

// Symmetric DFT matrix F[a,l] = e^{-2pi i k(a) l / M}; F = F^T and
// F conj(F) = M * Identity.
Grid dft_matrix(const Lattice& lat) {
    Grid F(lat.M, lat.M);
    const double w = 2.0 * std::numbers::pi / lat.M;
    for (int a = 0; a < lat.M; ++a) {
        const int k = mode_number(lat, a);
        for (int l = 0; l < lat.M; ++l) {
            const double ph = w * k * l;
            F(a, l) = complexd(std::cos(ph), -std::sin(ph));
        }
    }
    return F;
}

}  // namespace

ModeCoefficients to_modes(const TwoPhotonState& s) {
    const Lattice& lat = s.lattice;
    const Grid F = dft_matrix(lat);
    const double scale = lat.dz * lat.dz / lat.length();
    return ModeCoefficients{lat, scale * (F * s.psi_omega * F.transpose()),
                            scale * (F * s.psi_e * F.transpose())};
}

TwoPhotonState from_modes(const ModeCoefficients& m) {
    const Lattice& lat = m.lattice;
    const Grid Fc = dft_matrix(lat).conjugate();
    const double scale = lat.length() / (lat.dz * lat.dz * lat.M * lat.M);
    return TwoPhotonState{lat, scale * (Fc * m.xi * Fc.transpose()),
                          scale * (Fc * m.eta * Fc.transpose()), 0.0};
}

}  // namespace fwm
