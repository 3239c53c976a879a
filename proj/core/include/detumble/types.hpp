#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace detumble {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;
using Vec4 = Eigen::Vector4d;

} // namespace detumble
