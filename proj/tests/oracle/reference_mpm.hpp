#pragma once

// Straightforward serial reference implementation of one simulation step,
// independent of the optimized engine: dense triple loops, its own B-spline
// weights, and an SVD-based polar decomposition. Used as the ground-truth
// oracle in equivalence tests.

#include <vector>

#include <Eigen/Core>

namespace tacchi::test_oracle {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct RefParticle {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Mat3 C = Mat3::Zero();
  Mat3 F = Mat3::Identity();
  double mass = 0.0;
  double volume0 = 0.0;
  int tag = 0;  // 0 elastomer, 1 bottom, 2 indenter
};

struct RefGrid {
  int nx = 0, ny = 0, nz = 0;
  double dx = 0.0;
  Vec3 origin = Vec3::Zero();
  std::vector<double> mass;
  std::vector<Vec3> momentum;
  std::vector<Vec3> velocity;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * ny + j) * nz + k;
  }
};

struct RefScene {
  std::vector<RefParticle> particles;
  int nx = 0, ny = 0, nz = 0;
  double dx = 0.0;
  Vec3 origin = Vec3::Zero();
  double mu = 0.0, lambda = 0.0;
  double dt = 0.0;
};

/// One full step: zero grid, P2G, grid update (with face clamping), G2P,
/// boundary overrides, advection. Returns the filled grid for inspection.
RefGrid reference_step(RefScene& scene, const Vec3& indenter_velocity);

/// The 27 stencil weights and base node of a point (same node-centered
/// quadratic convention, written independently).
void reference_weights(const Vec3& x, const Vec3& origin, double dx, int base[3],
                       double weights[3][3][3]);

Mat3 reference_polar_rotation(const Mat3& F);
Mat3 reference_corotated_stress(const Mat3& F, double mu, double lambda);

}  // namespace tacchi::test_oracle
