#pragma once

#include <array>
#include <cmath>

#include "tacchi/types.hpp"

namespace tacchi::mpm {

/// Quadratic B-spline stencil of a point over its 3x3x3 node neighborhood.
/// Node-centered convention: per axis, base = floor(x/dx - 0.5) and the
/// normalized offset fx = x/dx - base lies in [0.5, 1.5].
struct BSplineStencil {
  Vec3i base;        // lowest node index of the neighborhood
  double w[3][3];    // w[axis][offset] 1-D weights
  double fx[3];      // normalized offset from the base node, per axis

  double weight(int a, int b, int c) const { return w[0][a] * w[1][b] * w[2][c]; }
  /// Offset from the particle to node (base + (a,b,c)), in node-spacing units.
  Vec3 dpos_units(int a, int b, int c) const {
    return {a - fx[0], b - fx[1], c - fx[2]};
  }
};

/// 1-D quadratic B-spline weights at normalized offset fx in [0.5, 1.5].
inline void quadratic_weights_1d(double fx, double w[3]) {
  w[0] = 0.5 * (1.5 - fx) * (1.5 - fx);
  w[1] = 0.75 - (fx - 1.0) * (fx - 1.0);
  w[2] = 0.5 * (fx - 0.5) * (fx - 0.5);
}

/// Stencil for a position given grid origin/spacing. No bounds checking;
/// callers guarantee the particle is in range (see Grid::stencil for the
/// checked variant).
inline BSplineStencil make_stencil(const Vec3& x, const Vec3& origin, double inv_dx) {
  BSplineStencil st;
  for (int a = 0; a < 3; ++a) {
    const double xn = (x[a] - origin[a]) * inv_dx;
    const double base = std::floor(xn - 0.5);
    st.base[a] = static_cast<int>(base);
    st.fx[a] = xn - base;
    quadratic_weights_1d(st.fx[a], st.w[a]);
  }
  return st;
}

}  // namespace tacchi::mpm
