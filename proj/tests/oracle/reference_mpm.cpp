#include "oracle/reference_mpm.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace tacchi::test_oracle {

void reference_weights(const Vec3& x, const Vec3& origin, double dx, int base[3],
                       double weights[3][3][3]) {
  double w1d[3][3];
  for (int a = 0; a < 3; ++a) {
    const double xn = (x[a] - origin[a]) / dx;
    base[a] = static_cast<int>(std::floor(xn - 0.5));
    const double t = xn - base[a];  // in [0.5, 1.5]
    w1d[a][0] = 0.5 * (1.5 - t) * (1.5 - t);
    w1d[a][1] = 0.75 - (t - 1.0) * (t - 1.0);
    w1d[a][2] = 0.5 * (t - 0.5) * (t - 0.5);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) weights[a][b][c] = w1d[0][a] * w1d[1][b] * w1d[2][c];
}

Mat3 reference_polar_rotation(const Mat3& F) {
  Eigen::JacobiSVD<Mat3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) *= -1.0;
  return U * V.transpose();
}

Mat3 reference_corotated_stress(const Mat3& F, double mu, double lambda) {
  const double J = F.determinant();
  const Mat3 R = reference_polar_rotation(F);
  return 2.0 * mu * (F - R) * F.transpose() + lambda * (J - 1.0) * J * Mat3::Identity();
}

RefGrid reference_step(RefScene& scene, const Vec3& indenter_velocity) {
  RefGrid grid;
  grid.nx = scene.nx;
  grid.ny = scene.ny;
  grid.nz = scene.nz;
  grid.dx = scene.dx;
  grid.origin = scene.origin;
  const std::size_t n_nodes =
      static_cast<std::size_t>(scene.nx) * scene.ny * scene.nz;
  grid.mass.assign(n_nodes, 0.0);
  grid.momentum.assign(n_nodes, Vec3::Zero());
  grid.velocity.assign(n_nodes, Vec3::Zero());

  // Particle to grid.
  for (const RefParticle& p : scene.particles) {
    int base[3];
    double w[3][3][3];
    reference_weights(p.x, scene.origin, scene.dx, base, w);
    Mat3 stress_term = Mat3::Zero();
    if (p.tag != 2) {
      const Mat3 S = reference_corotated_stress(p.F, scene.mu, scene.lambda);
      stress_term = -scene.dt * (4.0 / (scene.dx * scene.dx)) * p.volume0 * S;
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          const Vec3 node = scene.origin + Vec3(base[0] + a, base[1] + b, base[2] + c) * scene.dx;
          const Vec3 dpos = node - p.x;
          const std::size_t i = grid.index(base[0] + a, base[1] + b, base[2] + c);
          grid.mass[i] += w[a][b][c] * p.mass;
          grid.momentum[i] +=
              w[a][b][c] * (p.mass * p.v + (p.mass * p.C + stress_term) * dpos);
        }
  }

  // Grid update with zero normal velocity on domain faces.
  for (int i = 0; i < scene.nx; ++i)
    for (int j = 0; j < scene.ny; ++j)
      for (int k = 0; k < scene.nz; ++k) {
        const std::size_t n = grid.index(i, j, k);
        if (grid.mass[n] > 0.0) {
          Vec3 v = grid.momentum[n] / grid.mass[n];
          if (i == 0 || i == scene.nx - 1) v.x() = 0.0;
          if (j == 0 || j == scene.ny - 1) v.y() = 0.0;
          if (k == 0 || k == scene.nz - 1) v.z() = 0.0;
          grid.velocity[n] = v;
        }
      }

  // Grid to particle, boundary overrides, advection.
  for (RefParticle& p : scene.particles) {
    if (p.tag != 2) {
      int base[3];
      double w[3][3][3];
      reference_weights(p.x, scene.origin, scene.dx, base, w);
      Vec3 v_new = Vec3::Zero();
      Mat3 B = Mat3::Zero();
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) {
            const Vec3 node =
                scene.origin + Vec3(base[0] + a, base[1] + b, base[2] + c) * scene.dx;
            const Vec3 dpos = node - p.x;
            const Vec3 vg = grid.velocity[grid.index(base[0] + a, base[1] + b, base[2] + c)];
            v_new += w[a][b][c] * vg;
            B += w[a][b][c] * vg * dpos.transpose();
          }
      p.v = v_new;
      p.C = (4.0 / (scene.dx * scene.dx)) * B;
      p.F = (Mat3::Identity() + scene.dt * p.C) * p.F;
    }
    if (p.tag == 2) p.v = indenter_velocity;
    if (p.tag == 1) p.v = Vec3::Zero();
    p.x += scene.dt * p.v;
  }
  return grid;
}

}  // namespace tacchi::test_oracle
