#pragma once

#include "tacchi/mpm/sim_state.hpp"
#include "tacchi/render/depth_map.hpp"

namespace tacchi::render {

/// Reconstructs the continuous surface depth map from the elastomer's
/// top-surface particles: depth(u,v) = z0 - z(current), interpolated
/// bilinearly on the reference lattice. The pixel grid is centered on the
/// lattice center; pixels outside the lattice clamp to the border value.
/// Throws NoSurface when the state has no surface lattice.
DepthMap extract_surface_depth(const mpm::SimState& state, int width, int height,
                               double pixel_to_meter);

/// Full-surface extraction: pixel counts are chosen to span the whole
/// elastomer surface at the given pixel pitch.
DepthMap extract_surface_depth(const mpm::SimState& state, double pixel_to_meter);

}  // namespace tacchi::render
