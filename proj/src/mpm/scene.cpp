#include <cmath>
#include <string>

#include "tacchi/errors.hpp"
#include "tacchi/mpm/sim_state.hpp"

namespace tacchi::mpm {

double stable_dt_bound(const MaterialParams& material, double dx) {
  return 0.5 * dx / std::sqrt(material.youngs_modulus / material.density);
}

namespace {

void check_margin(const Grid& grid, const geo::ParticleSet& set, const char* label) {
  auto [lo, hi] = set.bounding_box();
  const double margin = 2.0 * grid.dx;
  const Vec3 glo = grid.extent_lo(), ghi = grid.extent_hi();
  for (int a = 0; a < 3; ++a) {
    if (lo[a] - glo[a] < margin || ghi[a] - hi[a] < margin)
      throw GridTooSmall(std::string(label) + " bounding box violates the 2-node grid margin on axis " +
                         std::to_string(a));
  }
}

}  // namespace

SimState init_scene(const SceneParams& params, const geo::ParticleSet& elastomer,
                    const geo::ParticleSet& indenter, const Vec3& indenter_velocity) {
  if (elastomer.empty() || indenter.empty())
    throw EmptyScene("init_scene: both elastomer and indenter particle sets must be non-empty");
  params.material.validate();
  if (!(params.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!elastomer.lattice)
    throw ConfigError("init_scene: elastomer set must carry lattice metadata");

  SimState state;
  state.material = params.material;
  state.dt = params.dt;
  state.gravity = params.gravity;
  state.grid = Grid(params.grid_resolution,
                    params.grid_edge / params.grid_resolution.x(), params.grid_origin);

  check_margin(state.grid, elastomer, "elastomer");
  check_margin(state.grid, indenter, "indenter");

  const geo::LatticeMeta& lat = *elastomer.lattice;
  const double el_volume = lat.dims.prod();
  const double el_vol0 = el_volume / static_cast<double>(elastomer.size());
  const double el_mass = params.material.density * el_vol0;
  const int n_fixed = params.fixed_bottom_layers;

  state.particles.x.reserve(elastomer.size() + indenter.size());
  for (int i = 0; i < lat.counts.x(); ++i)
    for (int j = 0; j < lat.counts.y(); ++j)
      for (int k = 0; k < lat.counts.z(); ++k) {
        const std::size_t p = lat.index(i, j, k);
        const Tag tag = k < n_fixed ? Tag::ElastomerBottom : Tag::Elastomer;
        state.particles.append(elastomer.positions[p], Vec3::Zero(), el_mass, el_vol0, tag);
      }
  state.elastomer_count = elastomer.size();

  auto [ind_lo, ind_hi] = indenter.bounding_box();
  const double ind_bbox_vol = std::max((ind_hi - ind_lo).prod(), 1e-30);
  const double ind_vol0 = ind_bbox_vol / static_cast<double>(indenter.size());
  const double ind_mass = params.material.density * ind_vol0 * params.indenter_mass_scale;
  for (const Vec3& p : indenter.positions)
    state.particles.append(p, indenter_velocity, ind_mass, ind_vol0, Tag::Indenter);
  state.indenter_velocity = indenter_velocity;

  // Record the top-surface lattice layer for depth extraction.
  SurfaceLattice& surf = state.surface;
  surf.nx = lat.counts.x();
  surf.ny = lat.counts.y();
  surf.x0 = lat.origin.x();
  surf.y0 = lat.origin.y();
  surf.sx = lat.spacing().x();
  surf.sy = lat.spacing().y();
  surf.z0 = lat.origin.z() + lat.dims.z();
  surf.particle.resize(static_cast<std::size_t>(surf.nx) * surf.ny);
  const int top_k = lat.counts.z() - 1;
  for (int i = 0; i < surf.nx; ++i)
    for (int j = 0; j < surf.ny; ++j)
      surf.particle[surf.index(i, j)] = static_cast<std::uint32_t>(lat.index(i, j, top_k));

  return state;
}

}  // namespace tacchi::mpm
