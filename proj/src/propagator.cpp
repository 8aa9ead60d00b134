#include "fwm/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

MediumMask full_mask(const Lattice& lat) { return MediumMask{std::vector<bool>(lat.M, true)}; }
MediumMask empty_mask(const Lattice& lat) { return MediumMask{std::vector<bool>(lat.M, false)}; }

MediumMask window_mask(const Lattice& lat, int start, int end) {
    if (end < start) throw std::invalid_argument("window_mask: end must be >= start");
    if (end - start > lat.M) throw std::invalid_argument("window_mask: window longer than ring");
    MediumMask m{std::vector<bool>(lat.M, false)};
    for (int l = start; l < end; ++l) m.active[mod_cells(l, lat.M)] = true;
    return m;
}

namespace {

void check_plan(const TwoPhotonState& state, const StepPlan& plan) {
    const Lattice& lat = state.lattice;
    if (plan.dt != lat.dz / lat.c)
        throw std::invalid_argument(
            "step: unsupported time step (this propagator is exact only at whole-cell steps "
            "dt = dz/c; use the mode-space integrator for finer steps)");
    if (static_cast<int>(plan.mask.active.size()) != lat.M)
        throw std::invalid_argument("step: mask length does not match lattice");
    if (!state.psi_omega.allFinite() || !state.psi_e.allFinite())
        throw std::runtime_error("step: non-finite amplitude in state");
}

// Cyclic shift of both indices by +1 (content moves to the next cell).
void shift_both(Grid& g, Grid& scratch) {
    const int M = static_cast<int>(g.rows());
    for (int c = 0; c < M; ++c) {
        const int cs = (c + 1) % M;
        for (int r = 0; r < M; ++r) scratch((r + 1) % M, cs) = g(r, c);
    }
    g.swap(scratch);
}

}  // namespace

void step_inplace(TwoPhotonState& state, const StepPlan& plan) {
    check_plan(state, plan);
    const Lattice& lat = state.lattice;
    const int M = lat.M;

    Grid scratch(M, M);
    shift_both(state.psi_omega, scratch);
    shift_both(state.psi_e, scratch);

    const double th = plan.kappa * lat.c * plan.dt;
    const double cth = std::cos(th);
    const complexd mis(0.0, -std::sin(th));
    for (int l = 0; l < M; ++l) {
        if (!plan.mask.active[l]) continue;
        const complexd a = state.psi_omega(l, l);
        const complexd b = state.psi_e(l, l);
        state.psi_omega(l, l) = cth * a + mis * b;
        state.psi_e(l, l) = mis * a + cth * b;
    }
    state.t += plan.dt;
}

TwoPhotonState step(const TwoPhotonState& state, const StepPlan& plan) {
    TwoPhotonState out = state;
    step_inplace(out, plan);
    return out;
}

Trajectory run(const TwoPhotonState& state, const StepPlan& plan, int snapshot_every) {
    if (snapshot_every < 1) throw std::invalid_argument("run: snapshot_every must be >= 1");
    if (plan.n_steps < 0) throw std::invalid_argument("run: n_steps must be >= 0");
    Trajectory traj;
    traj.dt = plan.dt;
    traj.snapshot_every = snapshot_every;
    traj.snapshots.push_back(state);
    TwoPhotonState cur = state;
    for (int n = 1; n <= plan.n_steps; ++n) {
        step_inplace(cur, plan);
        if (n % snapshot_every == 0 || n == plan.n_steps) traj.snapshots.push_back(cur);
    }
    return traj;
}

int active_cells_traversed(const MediumMask& mask, int entry_cell, int steps) {
    if (steps < 0) throw std::invalid_argument("active_cells_traversed: steps must be >= 0");
    const int M = static_cast<int>(mask.active.size());
    int count = 0;
    for (int n = 1; n <= steps; ++n)
        if (mask.active[mod_cells(entry_cell + n, M)]) ++count;
    return count;
}

double rotation_angle_accumulated(const StepPlan& plan, const Lattice& lat, int entry_cell,
                                  int steps) {
    return plan.kappa * lat.dz * active_cells_traversed(plan.mask, entry_cell, steps);
}

}  // namespace fwm
