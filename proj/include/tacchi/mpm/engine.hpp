#pragma once

#include "tacchi/mpm/sim_state.hpp"

namespace tacchi::mpm {

/// Resets grid accumulators over the active window (particle bounds plus
/// stencil margin) and re-bins particles for the scatter. Throws OutOfGrid
/// when the window leaves the grid.
void zero_grid(SimState& state);

/// Scatters particle mass and momentum (velocity, affine velocity, and the
/// elastic impulse) to the grid. Accumulation order is fixed regardless of
/// thread count, so results are bit-reproducible.
void particle_to_grid(SimState& state);

/// V = MG / M on nodes with mass (plus gravity when enabled), V = 0 elsewhere;
/// zeroes the normal velocity component on the six domain faces.
void grid_update(SimState& state);

/// Gathers velocity, affine velocity, and the deformation-gradient update for
/// every non-indenter particle. Pure gather; the grid is read-only.
void grid_to_particle(SimState& state);

/// Rigid/fixed overrides: indenter particles take the commanded velocity,
/// bottom-layer particles are pinned to zero velocity.
void apply_boundary(SimState& state, const Vec3& indenter_velocity);

/// Moves particles by dt * v and increments step_count. Throws OutOfGrid when
/// any particle leaves the stencil-safe margin.
void advect(SimState& state);

/// One full update: zero -> P2G -> grid update -> G2P -> boundary -> advect,
/// repeated n_substeps times with the same commanded indenter velocity.
void step(SimState& state, const Vec3& indenter_velocity, int n_substeps = 1);

}  // namespace tacchi::mpm
