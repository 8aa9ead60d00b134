#include "fwm/lattice.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fwm;

namespace {

TwoPhotonState random_state(const Lattice& lat, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    TwoPhotonState s{lat, Grid(lat.M, lat.M), Grid(lat.M, lat.M), 0.0};
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp) {
            s.psi_omega(l, lp) = complexd(dist(gen), dist(gen));
            s.psi_e(l, lp) = complexd(dist(gen), dist(gen));
        }
    const double scale = 1.0 / std::sqrt(total_norm(s));
    s.psi_omega *= scale;
    s.psi_e *= scale;
    return s;
}

}  // namespace

TEST_CASE("lattice validation rejects bad parameters") {
    CHECK_NOTHROW(validate(Lattice{45, 1.0, 1.0}));
    CHECK_THROWS_AS(validate(Lattice{0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{-3, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{8, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{8, -1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Lattice{8, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("mode numbering covers the centered band and inverts") {
    const Lattice odd{5, 1.0, 1.0};
    CHECK(odd.max_mode() == 2);
    CHECK(mode_number(odd, 0) == 0);
    CHECK(mode_number(odd, 2) == 2);
    CHECK(mode_number(odd, 3) == -2);
    CHECK(mode_number(odd, 4) == -1);
    for (int a = 0; a < odd.M; ++a) CHECK(mode_index(odd, mode_number(odd, a)) == a);
    CHECK_THROWS_AS(mode_number(odd, 5), std::out_of_range);
    CHECK_THROWS_AS(mode_index(odd, 3), std::out_of_range);

    const Lattice even{8, 1.0, 1.0};
    CHECK(mode_number(even, 4) == -4);
    CHECK(mode_number(even, 7) == -1);

    CHECK(wrap_mode(odd, 2 + 2) == -1);   // 4 mod 5 in {-2..2}
    CHECK(wrap_mode(odd, -2 - 2) == 1);
    CHECK(wrap_mode(odd, 5) == 0);
    CHECK(mod_cells(-1, 8) == 7);
    CHECK(mod_cells(9, 8) == 1);
}

TEST_CASE("gaussian envelope: tiny width degrades to a point") {
    const Lattice lat{8, 1.0, 1.0};
    const Envelope g = make_gaussian_envelope(lat, 3.0, 1e-8);
    const Envelope p = make_point_envelope(lat, 3);
    for (int l = 0; l < lat.M; ++l) CHECK(std::abs(g.f0[l] - p.f0[l]) < 1e-15);
    CHECK(std::abs(g.f0[3]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian envelope: peak position and periodic symmetry") {
    const Lattice lat{8, 1.0, 1.0};
    const Envelope g = make_gaussian_envelope(lat, 3.0, 1.0);
    for (int l = 0; l < lat.M; ++l) CHECK(std::abs(g.f0[l]) <= std::abs(g.f0[3]));
    CHECK(g.f0[2].real() == doctest::Approx(g.f0[4].real()).epsilon(1e-15));
    CHECK(g.f0[1].real() == doctest::Approx(g.f0[5].real()).epsilon(1e-15));
}

TEST_CASE("gaussian envelope: normalization and amplitude ratio at M=45") {
    const Lattice lat{45, 1.0, 1.0};
    const Envelope g = make_gaussian_envelope(lat, 22.0, 4.0);
    CHECK(envelope_norm(g) == doctest::Approx(1.0).epsilon(1e-14));
    // distance 4 at width 4: exp(-16/32) below the peak => ratio e^{1/2}
    const double ratio = std::abs(g.f0[22]) / std::abs(g.f0[18]);
    CHECK(ratio == doctest::Approx(1.6487212707001282).epsilon(1e-14));
}

TEST_CASE("envelope constructors reject out-of-range input") {
    const Lattice lat{8, 1.0, 1.0};
    CHECK_THROWS_AS(make_gaussian_envelope(lat, 3.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian_envelope(lat, 3.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian_envelope(lat, -0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian_envelope(lat, 8.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_point_envelope(lat, -1), std::invalid_argument);
    CHECK_THROWS_AS(make_point_envelope(lat, 8), std::invalid_argument);
}

TEST_CASE("point envelope carries 1/sqrt(dz) in one cell") {
    const Lattice lat{8, 0.25, 1.0};
    const Envelope p = make_point_envelope(lat, 2);
    CHECK(p.f0[2] == complexd(2.0, 0.0));  // 1/sqrt(0.25)
    for (int l = 0; l < lat.M; ++l)
        if (l != 2) CHECK(p.f0[l] == complexd(0.0, 0.0));
    CHECK(envelope_norm(p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("separable input from point envelopes fills exactly one grid entry") {
    const Lattice lat{8, 1.0, 1.0};
    const Envelope p = make_point_envelope(lat, 2);
    const TwoPhotonState s = separable_input(p, p);
    CHECK(s.psi_omega(2, 2) == complexd(1.0, 0.0));  // 1/dz^2
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp) {
            if (l != 2 || lp != 2) CHECK(s.psi_omega(l, lp) == complexd(0.0, 0.0));
            CHECK(s.psi_e(l, lp) == complexd(0.0, 0.0));
        }
    CHECK(total_norm(s) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.t == 0.0);
}

TEST_CASE("separable input with identical envelopes is exchange-symmetric") {
    const Lattice lat{45, 1.0, 1.0};
    const Envelope g = make_gaussian_envelope(lat, 22.0, 4.0);
    const TwoPhotonState s = separable_input(g, g);
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp)
            CHECK(s.psi_omega(l, lp) == s.psi_omega(lp, l));
    CHECK(total_norm(s) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("diagonal entangled input: point case matches the separable point") {
    const Lattice lat{8, 1.0, 1.0};
    const Envelope p = make_point_envelope(lat, 2);
    const TwoPhotonState d = diagonal_entangled_input(p);
    const TwoPhotonState s = separable_input(p, p);
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp)
            CHECK(std::abs(d.psi_omega(l, lp) - s.psi_omega(l, lp)) < 1e-15);
}

TEST_CASE("diagonal entangled input: off-diagonal exactly zero, norm one") {
    const Lattice lat{45, 1.0, 1.0};
    const Envelope g = make_gaussian_envelope(lat, 22.0, 4.0);
    const TwoPhotonState d = diagonal_entangled_input(g);
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp)
            if (l != lp) CHECK(d.psi_omega(l, lp) == complexd(0.0, 0.0));
    CHECK(total_norm(d) == doctest::Approx(1.0).epsilon(1e-14));

    Envelope zero{lat, std::vector<complexd>(lat.M, complexd(0.0, 0.0))};
    CHECK_THROWS_AS(diagonal_entangled_input(zero), std::invalid_argument);
}

TEST_CASE("separable input rejects envelopes from different lattices") {
    const Envelope a = make_point_envelope(Lattice{8, 1.0, 1.0}, 2);
    const Envelope b = make_point_envelope(Lattice{9, 1.0, 1.0}, 2);
    CHECK_THROWS_AS(separable_input(a, b), std::invalid_argument);
}

TEST_CASE("mode transform: constant grid maps to the zero mode only") {
    const Lattice lat{5, 1.0, 1.0};
    TwoPhotonState s{lat, Grid::Constant(5, 5, complexd(0.2, 0.0)), Grid::Zero(5, 5), 0.0};
    const ModeCoefficients m = to_modes(s);
    // xi[0,0] = (dz^2/L) * M^2 * const = M * const for dz = 1
    CHECK(std::abs(m.xi(0, 0) - complexd(1.0, 0.0)) < 1e-14);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            if (a != 0 || b != 0) CHECK(std::abs(m.xi(a, b)) < 1e-14);
}

TEST_CASE("mode transform: point grid is flat in magnitude") {
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s = separable_input(make_point_envelope(lat, 2), make_point_envelope(lat, 2));
    const ModeCoefficients m = to_modes(s);
    const double mag0 = std::abs(m.xi(0, 0));
    CHECK(mag0 > 0.0);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            CHECK(std::abs(m.xi(a, b)) == doctest::Approx(mag0).epsilon(1e-13));
}

TEST_CASE("mode transform roundtrip is exact to 1e-13") {
    for (unsigned seed : {7u, 8u}) {
        const Lattice lat{9, 1.0, 1.0};
        const TwoPhotonState s = random_state(lat, seed);
        const TwoPhotonState back = from_modes(to_modes(s));
        double worst = 0.0;
        for (int l = 0; l < lat.M; ++l)
            for (int lp = 0; lp < lat.M; ++lp) {
                worst = std::max(worst, std::abs(back.psi_omega(l, lp) - s.psi_omega(l, lp)));
                worst = std::max(worst, std::abs(back.psi_e(l, lp) - s.psi_e(l, lp)));
            }
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("mode transform preserves the norm (Parseval)") {
    for (int M : {5, 8, 45}) {
        const Lattice lat{M, 0.5, 1.0};
        const TwoPhotonState s = random_state(lat, 1234u + static_cast<unsigned>(M));
        const ModeCoefficients m = to_modes(s);
        CHECK(std::abs(mode_norm(m) - total_norm(s)) < 1e-12);
    }
}
