#pragma once

#include "tacchi/types.hpp"

namespace tacchi::mpm {

/// Linear-elastic constants of the elastomer. Lamé parameters are derived
/// from Young's modulus and Poisson's ratio.
struct MaterialParams {
  double youngs_modulus = 1.45e5;  // Pa
  double poisson_ratio = 0.45;
  double density = 1000.0;  // kg/m^3

  double mu() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
  double lambda() const {
    return youngs_modulus * poisson_ratio /
           ((1.0 + poisson_ratio) * (1.0 - 2.0 * poisson_ratio));
  }
  void validate() const;  // throws ConfigError
};

/// Rotation factor R of the polar decomposition F = R S.
/// Scaled Newton iteration; falls back to the SVD route when the iteration
/// stalls. Throws DegenerateF for det(F) <= 0.
Mat3 polar_rotation(const Mat3& F);

/// Rotation factor via 3x3 SVD with reflection correction (R = U V^T,
/// flipping the smallest singular direction when det(U V^T) < 0).
Mat3 polar_rotation_svd(const Mat3& F);

/// Fixed-corotated stress term: S = P(F) F^T with
/// P(F) = 2 mu (F - R) + lambda (J - 1) J F^-T, which reduces to
/// S = 2 mu (F - R) F^T + lambda (J - 1) J I. Units: Pa.
Mat3 corotated_stress(const Mat3& F, const MaterialParams& material);

}  // namespace tacchi::mpm
