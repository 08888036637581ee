#include "tacchi/mpm/material.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "tacchi/errors.hpp"

namespace tacchi::mpm {

void MaterialParams::validate() const {
  if (!(youngs_modulus > 0.0)) throw ConfigError("youngs_modulus must be > 0");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw ConfigError("poisson_ratio must be in [0, 0.5)");
  if (!(density > 0.0)) throw ConfigError("density must be > 0");
}

Mat3 polar_rotation_svd(const Mat3& F) {
  if (!(F.determinant() > 0.0)) throw DegenerateF("polar_rotation: det(F) <= 0");
  Eigen::JacobiSVD<Mat3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) *= -1.0;
  return U * V.transpose();
}

Mat3 polar_rotation(const Mat3& F) {
  const double det = F.determinant();
  if (!(det > 0.0)) throw DegenerateF("polar_rotation: det(F) <= 0");

  // Newton iteration R <- (g R + R^-T / g) / 2 with determinant scaling;
  // quadratic convergence, a handful of iterations for near-identity F.
  // Written out by hand (cofactors, cbrt): this runs for every elastomer
  // particle every substep.
  double r00 = F(0, 0), r01 = F(0, 1), r02 = F(0, 2);
  double r10 = F(1, 0), r11 = F(1, 1), r12 = F(1, 2);
  double r20 = F(2, 0), r21 = F(2, 1), r22 = F(2, 2);
  for (int it = 0; it < 40; ++it) {
    // Cofactors: inv(R)^T = cof(R) / det(R).
    const double c00 = r11 * r22 - r12 * r21;
    const double c01 = r12 * r20 - r10 * r22;
    const double c02 = r10 * r21 - r11 * r20;
    const double c10 = r02 * r21 - r01 * r22;
    const double c11 = r00 * r22 - r02 * r20;
    const double c12 = r01 * r20 - r00 * r21;
    const double c20 = r01 * r12 - r02 * r11;
    const double c21 = r02 * r10 - r00 * r12;
    const double c22 = r00 * r11 - r01 * r10;
    const double d = r00 * c00 + r01 * c01 + r02 * c02;
    if (!(std::abs(d) > 1e-300)) return polar_rotation_svd(F);
    // Scale while far from the fixed point; g ~ 1 near convergence.
    const double g = std::abs(d - 1.0) > 1e-2 ? 1.0 / std::cbrt(std::abs(d)) : 1.0;
    const double hg = 0.5 * g;
    const double hd = 0.5 / (g * d);
    // R^-T = cof(R) / det(R), elementwise aligned with R.
    const double n00 = hg * r00 + hd * c00, n01 = hg * r01 + hd * c01,
                 n02 = hg * r02 + hd * c02;
    const double n10 = hg * r10 + hd * c10, n11 = hg * r11 + hd * c11,
                 n12 = hg * r12 + hd * c12;
    const double n20 = hg * r20 + hd * c20, n21 = hg * r21 + hd * c21,
                 n22 = hg * r22 + hd * c22;
    double step = std::abs(n00 - r00);
    step = std::max(step, std::abs(n01 - r01));
    step = std::max(step, std::abs(n02 - r02));
    step = std::max(step, std::abs(n10 - r10));
    step = std::max(step, std::abs(n11 - r11));
    step = std::max(step, std::abs(n12 - r12));
    step = std::max(step, std::abs(n20 - r20));
    step = std::max(step, std::abs(n21 - r21));
    step = std::max(step, std::abs(n22 - r22));
    r00 = n00; r01 = n01; r02 = n02;
    r10 = n10; r11 = n11; r12 = n12;
    r20 = n20; r21 = n21; r22 = n22;
    if (step < 1e-13) {
      Mat3 R;
      R << r00, r01, r02, r10, r11, r12, r20, r21, r22;
      return R;
    }
  }
  return polar_rotation_svd(F);
}

Mat3 corotated_stress(const Mat3& F, const MaterialParams& material) {
  const double J = F.determinant();
  if (!(J > 0.0)) throw DegenerateF("corotated_stress: det(F) <= 0");
  const Mat3 R = polar_rotation(F);
  return 2.0 * material.mu() * (F - R) * F.transpose() +
         material.lambda() * (J - 1.0) * J * Mat3::Identity();
}

}  // namespace tacchi::mpm
