#include "fwm/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fwm;

namespace {

constexpr double kPi = std::numbers::pi;

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

double max_diff(const TwoPhotonState& a, const TwoPhotonState& b) {
    double worst = 0.0;
    for (int l = 0; l < a.lattice.M; ++l)
        for (int lp = 0; lp < a.lattice.M; ++lp) {
            worst = std::max(worst, std::abs(a.psi_omega(l, lp) - b.psi_omega(l, lp)));
            worst = std::max(worst, std::abs(a.psi_e(l, lp) - b.psi_e(l, lp)));
        }
    return worst;
}

}  // namespace

TEST_CASE("masks: full, empty, plain window, seam-crossing window") {
    const Lattice lat{8, 1.0, 1.0};
    CHECK(full_mask(lat).active == std::vector<bool>(8, true));
    CHECK(empty_mask(lat).active == std::vector<bool>(8, false));

    const MediumMask w = window_mask(lat, 2, 5);
    for (int l = 0; l < 8; ++l) CHECK(w.active[l] == (l >= 2 && l < 5));

    const MediumMask seam = window_mask(lat, 6, 9);  // wraps: cells 6, 7, 0
    for (int l = 0; l < 8; ++l) CHECK(seam.active[l] == (l == 6 || l == 7 || l == 0));

    CHECK_THROWS_AS(window_mask(lat, 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(window_mask(lat, 0, 9), std::invalid_argument);
}

TEST_CASE("step rejects sub-cell time steps, bad masks, non-finite states") {
    const Lattice lat{8, 1.0, 2.0};  // dz/c = 0.5
    const TwoPhotonState s = random_state(lat, 3u);
    StepPlan plan{0.1, 0.5, 1, full_mask(lat)};
    CHECK_NOTHROW(step(s, plan));

    StepPlan bad_dt = plan;
    bad_dt.dt = 0.25;
    CHECK_THROWS_AS(step(s, bad_dt), std::invalid_argument);

    StepPlan bad_mask = plan;
    bad_mask.mask.active.resize(3);
    CHECK_THROWS_AS(step(s, bad_mask), std::invalid_argument);

    TwoPhotonState inf_state = s;
    inf_state.psi_e(1, 1) = complexd(std::nan(""), 0.0);
    CHECK_THROWS_AS(step(inf_state, plan), std::runtime_error);
}

TEST_CASE("kappa = 0: a full loop returns exactly the initial state") {
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s0 = random_state(lat, 11u);
    const StepPlan plan{0.0, 1.0, 8, full_mask(lat)};
    const Trajectory traj = run(s0, plan, 1);
    const TwoPhotonState& last = traj.snapshots.back();
    CHECK(max_diff(last, s0) == 0.0);  // pure permutation, bit-exact
    CHECK(last.t == 8.0);
}

TEST_CASE("point pair at quarter conversion: amplitude fully in the generated pair") {
    // kappa*dz = pi/16 per step; after 8 steps (one loop of M=8) the angle
    // is pi/2 and the pair is back at its starting cell.
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s0 = diagonal_entangled_input(make_point_envelope(lat, 2));
    const StepPlan plan{kPi / 16.0, 1.0, 8, full_mask(lat)};
    TwoPhotonState s = s0;
    for (int n = 0; n < 8; ++n) step_inplace(s, plan);
    CHECK(std::abs(s.psi_omega(2, 2)) < 1e-14);
    CHECK(std::abs(s.psi_e(2, 2) - complexd(0.0, -1.0)) < 1e-14);

    for (int n = 0; n < 8; ++n) step_inplace(s, plan);  // 16 steps: angle pi
    CHECK(std::abs(s.psi_omega(2, 2) - complexd(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(s.psi_e(2, 2)) < 1e-14);
}

TEST_CASE("run: zero steps yields a single snapshot; snapshot cadence keeps the end") {
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s0 = random_state(lat, 5u);
    const MediumMask mask = full_mask(lat);

    const Trajectory none = run(s0, StepPlan{0.3, 1.0, 0, mask}, 1);
    REQUIRE(none.snapshots.size() == 1);
    CHECK(max_diff(none.snapshots[0], s0) == 0.0);

    const Trajectory traj = run(s0, StepPlan{0.3, 1.0, 5, mask}, 2);
    REQUIRE(traj.snapshots.size() == 4);  // t = 0, 2, 4, 5
    CHECK(traj.snapshots[0].t == 0.0);
    CHECK(traj.snapshots[1].t == 2.0);
    CHECK(traj.snapshots[2].t == 4.0);
    CHECK(traj.snapshots[3].t == 5.0);

    CHECK_THROWS_AS(run(s0, StepPlan{0.3, 1.0, -1, mask}, 1), std::invalid_argument);
    CHECK_THROWS_AS(run(s0, StepPlan{0.3, 1.0, 1, mask}, 0), std::invalid_argument);
}

TEST_CASE("accumulated rotation angle: full ring, window, empty medium") {
    const Lattice lat{8, 1.0, 1.0};
    const double kappa = 0.37;

    const StepPlan full{kappa, 1.0, 0, full_mask(lat)};
    CHECK(rotation_angle_accumulated(full, lat, 2, 5) == doctest::Approx(5 * kappa).epsilon(1e-15));

    // One full loop across a 3-cell window accumulates 3 kappa dz from any entry cell.
    const StepPlan window{kappa, 1.0, 0, window_mask(lat, 0, 3)};
    for (int entry = 0; entry < 8; ++entry)
        CHECK(rotation_angle_accumulated(window, lat, entry, 8) ==
              doctest::Approx(3 * kappa).epsilon(1e-15));

    const StepPlan empty{kappa, 1.0, 0, empty_mask(lat)};
    CHECK(rotation_angle_accumulated(empty, lat, 0, 8) == 0.0);

    CHECK_THROWS_AS(active_cells_traversed(full.mask, 0, -1), std::invalid_argument);
}

TEST_CASE("norm is conserved to 1e-12 over ten thousand steps") {
    const Lattice lat{45, 1.0, 1.0};
    const TwoPhotonState s0 = separable_input(make_gaussian_envelope(lat, 22.0, 4.0),
                                              make_gaussian_envelope(lat, 22.0, 4.0));
    const StepPlan plan{kPi / 45.0, 1.0, 0, full_mask(lat)};
    TwoPhotonState s = s0;
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        step_inplace(s, plan);
        worst = std::max(worst, std::abs(total_norm(s) - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("off-diagonal entries are transported bit-exactly (rotation immunity)") {
    const Lattice lat{9, 1.0, 1.0};
    const TwoPhotonState s0 = random_state(lat, 21u);
    const StepPlan plan{0.8, 1.0, 0, full_mask(lat)};
    TwoPhotonState s = s0;
    const int steps = 7;
    for (int n = 0; n < steps; ++n) step_inplace(s, plan);
    for (int l = 0; l < lat.M; ++l)
        for (int lp = 0; lp < lat.M; ++lp) {
            if (l == lp) continue;
            const int l0 = mod_cells(l - steps, lat.M);
            const int lp0 = mod_cells(lp - steps, lat.M);
            CHECK(s.psi_omega(l, lp) == s0.psi_omega(l0, lp0));
            CHECK(s.psi_e(l, lp) == s0.psi_e(l0, lp0));
        }
}

TEST_CASE("composition: n + m steps equals n steps then m steps") {
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s0 = random_state(lat, 31u);
    const MediumMask mask = window_mask(lat, 1, 6);

    const Trajectory once = run(s0, StepPlan{0.3, 1.0, 8, mask}, 8);
    const Trajectory first = run(s0, StepPlan{0.3, 1.0, 3, mask}, 3);
    const Trajectory second = run(first.snapshots.back(), StepPlan{0.3, 1.0, 5, mask}, 5);

    CHECK(max_diff(once.snapshots.back(), second.snapshots.back()) == 0.0);
    CHECK(second.snapshots.back().t == 8.0);
}

TEST_CASE("the step is linear in the state") {
    const Lattice lat{7, 1.0, 1.0};
    const TwoPhotonState a = random_state(lat, 41u);
    const TwoPhotonState b = random_state(lat, 42u);
    const StepPlan plan{0.51, 1.0, 1, full_mask(lat)};
    const complexd ca(0.3, -1.1), cb(-0.7, 0.2);

    TwoPhotonState combo{lat, ca * a.psi_omega + cb * b.psi_omega, ca * a.psi_e + cb * b.psi_e, 0.0};
    const TwoPhotonState lhs = step(combo, plan);
    const TwoPhotonState sa = step(a, plan);
    const TwoPhotonState sb = step(b, plan);
    TwoPhotonState rhs{lat, ca * sa.psi_omega + cb * sb.psi_omega, ca * sa.psi_e + cb * sb.psi_e, 1.0};
    CHECK(max_diff(lhs, rhs) < 1e-15);
}

TEST_CASE("a masked-out diagonal cell is never rotated") {
    const Lattice lat{8, 1.0, 1.0};
    const TwoPhotonState s0 = diagonal_entangled_input(make_point_envelope(lat, 2));
    // Window excludes every cell the pair visits except cells 3 and 4.
    const StepPlan plan{kPi / 4.0, 1.0, 0, window_mask(lat, 3, 5)};
    TwoPhotonState s = s0;
    step_inplace(s, plan);  // enters cell 3 (active): rotated by pi/4
    CHECK(std::abs(s.psi_omega(3, 3) - complexd(std::cos(kPi / 4.0), 0.0)) < 1e-15);
    step_inplace(s, plan);  // enters cell 4 (active): pi/2 total
    CHECK(std::abs(s.psi_omega(4, 4)) < 1e-15);
    CHECK(std::abs(s.psi_e(4, 4) - complexd(0.0, -1.0)) < 1e-15);
    step_inplace(s, plan);  // enters cell 5 (inactive): unchanged amplitudes
    CHECK(std::abs(s.psi_e(5, 5) - complexd(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(s.psi_omega(5, 5)) < 1e-15);
}
