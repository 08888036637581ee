#include "tacchi/mpm/grid.hpp"

#include <string>

#include "tacchi/errors.hpp"

namespace tacchi::mpm {

Grid::Grid(const Vec3i& resolution, double spacing, const Vec3& grid_origin)
    : res(resolution), dx(spacing), origin(grid_origin) {
  if ((res.array() < 4).any()) throw ConfigError("grid resolution must be >= 4 per axis");
  if (!(dx > 0.0)) throw ConfigError("grid spacing must be > 0");
  mass.assign(node_count(), 0.0);
  momentum.assign(node_count(), Vec3::Zero());
  velocity.assign(node_count(), Vec3::Zero());
}

BSplineStencil Grid::stencil(const Vec3& x) const {
  BSplineStencil st = make_stencil(x, origin, 1.0 / dx);
  for (int a = 0; a < 3; ++a) {
    if (st.base[a] < 0 || st.base[a] + 2 >= res[a])
      throw OutOfGrid("position (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                      ", " + std::to_string(x.z()) + ") m leaves the grid on axis " +
                      std::to_string(a));
  }
  return st;
}

bool Grid::in_range(const Vec3& x) const {
  for (int a = 0; a < 3; ++a) {
    const double xn = (x[a] - origin[a]) / dx;
    const int base = static_cast<int>(std::floor(xn - 0.5));
    if (base < 0 || base + 2 >= res[a]) return false;
  }
  return true;
}

}  // namespace tacchi::mpm
