#pragma once

#include <cstddef>
#include <vector>

#include "tacchi/mpm/bspline.hpp"
#include "tacchi/types.hpp"

namespace tacchi::mpm {

/// Fixed background lattice. Nodes sit at origin + (i,j,k)*dx with
/// 0 <= i < res.x etc.; storage is x-major (k fastest). Mass and momentum are
/// accumulated by the particle-to-grid scatter; velocity is filled by
/// grid_update. Only the active window (particle bounds plus stencil margin)
/// is touched each step, everything outside stays zero.
struct Grid {
  Vec3i res = Vec3i::Zero();
  double dx = 0.0;
  Vec3 origin = Vec3::Zero();

  std::vector<double> mass;      // kg
  std::vector<Vec3> momentum;    // kg m/s
  std::vector<Vec3> velocity;    // m/s

  // Active window [lo, hi) of the current step, plus the previous window so
  // the zeroing pass can clear everything that may hold stale values.
  Vec3i active_lo = Vec3i::Zero(), active_hi = Vec3i::Zero();
  Vec3i prev_lo = Vec3i::Zero(), prev_hi = Vec3i::Zero();

  Grid() = default;
  Grid(const Vec3i& resolution, double spacing, const Vec3& grid_origin);

  std::size_t node_count() const {
    return static_cast<std::size_t>(res.x()) * res.y() * res.z();
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * res.y() + j) * res.z() + k;
  }
  Vec3 node_position(int i, int j, int k) const {
    return origin + Vec3(i, j, k) * dx;
  }
  /// Physical extent of the node lattice (first to last node).
  Vec3 extent_lo() const { return origin; }
  Vec3 extent_hi() const { return origin + (res.cast<double>() - Vec3::Ones()) * dx; }

  /// Checked stencil lookup; throws OutOfGrid when the 3x3x3 neighborhood
  /// would leave the grid.
  BSplineStencil stencil(const Vec3& x) const;

  /// True when the neighborhood of x stays inside the grid.
  bool in_range(const Vec3& x) const;
};

}  // namespace tacchi::mpm
