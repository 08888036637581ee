#pragma once

#include <Eigen/Core>

namespace tacchi {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec3i = Eigen::Vector3i;

}  // namespace tacchi
