#pragma once

#include <string>

#include "tacchi/config/scene_config.hpp"
#include "tacchi/geo/particle_set.hpp"
#include "tacchi/mpm/engine.hpp"
#include "tacchi/mpm/sim_state.hpp"
#include "tacchi/render/depth_extract.hpp"
#include "tacchi/render/phong.hpp"

namespace tacchi::sim {

/// Elastomer lattice centered in the grid domain (x/y and z).
geo::ParticleSet elastomer_for(const config::SceneConfig& cfg);

/// Indenter cloud for one dataset object: loaded from cfg.indenter.cloud_path
/// when `object` matches the configured cloud (or is empty), otherwise
/// generated analytically by name; subsampled to target_points with the
/// configured seed.
geo::ParticleSet indenter_cloud_for(const config::SceneConfig& cfg, const std::string& object);

/// Places a prepared cloud at a lateral press offset (meters, relative to the
/// sensor center) with the configured initial gap above the elastomer top.
geo::ParticleSet place_for_press(const config::SceneConfig& cfg, const geo::ParticleSet& cloud,
                                 double offset_x, double offset_y);

/// Assembles the simulation state from a config and a placed indenter cloud.
mpm::SimState build_sim(const config::SceneConfig& cfg, const geo::ParticleSet& indenter,
                        int num_threads = 0);

/// Full capture path: surface depth -> per-object crop -> Phong render.
struct Capture {
  render::DepthMap depth;   // cropped to the camera frame
  render::Image8 image;
};
Capture capture(const mpm::SimState& state, const config::SceneConfig& cfg,
                const std::string& object);

/// Top-surface rest height of the configured elastomer, meters.
double elastomer_top_z(const config::SceneConfig& cfg);

}  // namespace tacchi::sim
