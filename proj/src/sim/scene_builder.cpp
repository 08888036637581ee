#include "tacchi/sim/scene_builder.hpp"

#include <cmath>

#include "tacchi/errors.hpp"
#include "tacchi/geo/point_cloud_io.hpp"
#include "tacchi/geo/shapes.hpp"

namespace tacchi::sim {

namespace {

Vec3 domain_center(const config::SceneConfig& cfg) {
  const double e = cfg.grid.edge_mm * 1e-3;
  return {0.5 * e, 0.5 * e, 0.5 * e};
}

}  // namespace

double elastomer_top_z(const config::SceneConfig& cfg) {
  const double e = cfg.grid.edge_mm * 1e-3;
  const double hz = cfg.elastomer.size_mm.z() * 1e-3;
  return 0.5 * e + 0.5 * hz;
}

geo::ParticleSet elastomer_for(const config::SceneConfig& cfg) {
  const Vec3 dims = cfg.elastomer.size_mm * 1e-3;
  const Vec3 center = domain_center(cfg);
  const Vec3 origin = center - 0.5 * dims;
  return geo::make_elastomer_lattice(dims, cfg.elastomer.particle_counts, origin);
}

geo::ParticleSet indenter_cloud_for(const config::SceneConfig& cfg, const std::string& object) {
  geo::ParticleSet cloud;
  if (!cfg.indenter.cloud_path.empty() && (object.empty() || object == cfg.indenter.cloud_path)) {
    cloud = geo::load_point_cloud(cfg.indenter.cloud_path);
  } else {
    const std::string shape = object.empty() ? cfg.indenter.generated_shape : object;
    if (!geo::is_known_shape(shape)) {
      // Fall back to treating the object name as a file path.
      cloud = geo::load_point_cloud(shape);
    } else {
      cloud = geo::generate_shape_cloud(shape, cfg.indenter.source_points, cfg.indenter.seed);
    }
  }
  cloud.tag = geo::Tag::Indenter;
  if (cfg.indenter.target_points < cloud.size())
    cloud = geo::subsample(cloud, cfg.indenter.target_points, cfg.indenter.seed);
  return cloud;
}

geo::ParticleSet place_for_press(const config::SceneConfig& cfg, const geo::ParticleSet& cloud,
                                 double offset_x, double offset_y) {
  geo::ParticleSet rotated = geo::place_indenter(cloud, Vec3::Zero(), cfg.indenter.z_rotation_rad);
  auto [lo, hi] = rotated.bounding_box();
  const Vec3 center = domain_center(cfg);
  const Vec3 target(center.x() + offset_x - 0.5 * (lo.x() + hi.x()),
                    center.y() + offset_y - 0.5 * (lo.y() + hi.y()),
                    elastomer_top_z(cfg) + cfg.indenter.gap_mm * 1e-3 - lo.z());
  return geo::place_indenter(rotated, target, 0.0);
}

mpm::SimState build_sim(const config::SceneConfig& cfg, const geo::ParticleSet& indenter,
                        int num_threads) {
  mpm::SceneParams params;
  params.grid_resolution = cfg.grid.nodes_per_axis;
  params.grid_edge = cfg.grid.edge_mm * 1e-3;
  params.grid_origin = Vec3::Zero();
  params.material = cfg.material();
  params.dt = cfg.time.dt_s;
  params.fixed_bottom_layers = cfg.elastomer.fixed_bottom_layers;
  params.gravity = Vec3(0, 0, -cfg.gravity_mps2);
  params.indenter_mass_scale = cfg.indenter.rigid_mass_scale;

  mpm::SimState state = mpm::init_scene(params, elastomer_for(cfg), indenter);
  state.num_threads = num_threads;
  return state;
}

Capture capture(const mpm::SimState& state, const config::SceneConfig& cfg,
                const std::string& object) {
  Capture cap;
  const render::DepthMap full =
      render::extract_surface_depth(state, cfg.render_params.pixel_to_meter);
  cap.depth = render::crop_align(full, cfg.alignment_for(object), cfg.render_params.image_width,
                                 cfg.render_params.image_height);
  cap.image = render::phong_render(cap.depth, cfg.lights, cfg.render_params_struct());
  return cap;
}

}  // namespace tacchi::sim
