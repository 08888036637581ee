#include "tacchi/render/depth_extract.hpp"

#include <algorithm>
#include <cmath>

#include "tacchi/errors.hpp"

namespace tacchi::render {

DepthMap extract_surface_depth(const mpm::SimState& state, int width, int height,
                               double pixel_to_meter) {
  const mpm::SurfaceLattice& surf = state.surface;
  if (!surf.valid()) throw NoSurface("extract_surface_depth: state has no surface lattice");
  if (width < 2 || height < 2 || !(pixel_to_meter > 0.0))
    throw ConfigError("extract_surface_depth: bad pixel grid");

  // Current heights sampled on the reference lattice.
  std::vector<double> depth_grid(surf.particle.size());
  for (std::size_t s = 0; s < surf.particle.size(); ++s)
    depth_grid[s] = surf.z0 - state.particles.x[surf.particle[s]].z();

  DepthMap map;
  map.width = width;
  map.height = height;
  map.pixel_to_meter = pixel_to_meter;
  map.values.resize(static_cast<std::size_t>(width) * height);

  const double cx = surf.x0 + 0.5 * (surf.nx - 1) * surf.sx;
  const double cy = surf.y0 + 0.5 * (surf.ny - 1) * surf.sy;
  for (int v = 0; v < height; ++v) {
    const double y = cy + (v - 0.5 * (height - 1)) * pixel_to_meter;
    const double gj = std::clamp((y - surf.y0) / surf.sy, 0.0, surf.ny - 1.0);
    const int j0 = std::min(static_cast<int>(gj), surf.ny - 2);
    const double fj = gj - j0;
    for (int u = 0; u < width; ++u) {
      const double x = cx + (u - 0.5 * (width - 1)) * pixel_to_meter;
      const double gi = std::clamp((x - surf.x0) / surf.sx, 0.0, surf.nx - 1.0);
      const int i0 = std::min(static_cast<int>(gi), surf.nx - 2);
      const double fi = gi - i0;
      const double d00 = depth_grid[surf.index(i0, j0)];
      const double d10 = depth_grid[surf.index(i0 + 1, j0)];
      const double d01 = depth_grid[surf.index(i0, j0 + 1)];
      const double d11 = depth_grid[surf.index(i0 + 1, j0 + 1)];
      map.at(v, u) =
          (1 - fj) * ((1 - fi) * d00 + fi * d10) + fj * ((1 - fi) * d01 + fi * d11);
    }
  }
  return map;
}

DepthMap extract_surface_depth(const mpm::SimState& state, double pixel_to_meter) {
  const mpm::SurfaceLattice& surf = state.surface;
  if (!surf.valid()) throw NoSurface("extract_surface_depth: state has no surface lattice");
  const int w = static_cast<int>(std::ceil((surf.nx - 1) * surf.sx / pixel_to_meter)) + 1;
  const int h = static_cast<int>(std::ceil((surf.ny - 1) * surf.sy / pixel_to_meter)) + 1;
  return extract_surface_depth(state, w, h, pixel_to_meter);
}

}  // namespace tacchi::render
