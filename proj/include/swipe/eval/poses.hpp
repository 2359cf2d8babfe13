#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <span>
#include <vector>

namespace swipe::eval {

struct CameraPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  /// Camera-to-world rotation.
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  double timestamp = 0.0;
};

/// Camera axes in world coordinates: forward is -z, right +x, up +y.
Eigen::Vector3d forward(const CameraPose& pose);
Eigen::Vector3d right(const CameraPose& pose);
Eigen::Vector3d up(const CameraPose& pose);

/// Linear position interpolation and sign-corrected normalized quaternion lerp
/// between the bracketing samples. Requires strictly increasing mocap
/// timestamps; throws RangeError for frame times outside the mocap span.
std::vector<CameraPose> interpolate_ground_truth(std::span<const CameraPose> mocap,
                                                 std::span<const double> frame_timestamps);

struct PlaneBasis {
  Eigen::Vector3d normal;
  Eigen::Vector3d u1;
  Eigen::Vector3d u2;
};

/// Orthonormal completion of a normal, oriented like a camera's (right, up)
/// when the normal is its forward vector: u1 x u2 = -normal.
PlaneBasis basis_from_normal(const Eigen::Vector3d& normal);

/// Normal = normalized mean forward vector. Throws DegeneracyError when the
/// mean is near zero and ArgumentError on an empty list.
PlaneBasis best_fit_plane(std::span<const CameraPose> poses);

/// Largest angle (degrees) between `normal` and any camera forward vector.
double max_angular_deviation(std::span<const CameraPose> poses, const Eigen::Vector3d& normal);

/// Plane spanned by one camera's right and up vectors.
PlaneBasis camera_plane(const CameraPose& pose);

/// (u1 . c, u2 . c) per pose.
Eigen::MatrixX2d project_to_plane(std::span<const CameraPose> poses, const PlaneBasis& basis);

}  // namespace swipe::eval
