#include "swipe/eval/poses.hpp"

#include "swipe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swipe::eval {

Eigen::Vector3d forward(const CameraPose& pose) { return pose.orientation * -Eigen::Vector3d::UnitZ(); }
Eigen::Vector3d right(const CameraPose& pose) { return pose.orientation * Eigen::Vector3d::UnitX(); }
Eigen::Vector3d up(const CameraPose& pose) { return pose.orientation * Eigen::Vector3d::UnitY(); }

std::vector<CameraPose> interpolate_ground_truth(std::span<const CameraPose> mocap,
                                                 std::span<const double> frame_timestamps) {
  if (mocap.empty()) throw ArgumentError("no motion capture samples");
  for (std::size_t i = 1; i < mocap.size(); ++i) {
    if (!(mocap[i].timestamp > mocap[i - 1].timestamp)) {
      throw ArgumentError("motion capture timestamps must be strictly increasing");
    }
  }
  std::vector<CameraPose> out;
  out.reserve(frame_timestamps.size());
  for (const double t : frame_timestamps) {
    if (!(t >= mocap.front().timestamp && t <= mocap.back().timestamp)) {
      throw RangeError("frame time " + std::to_string(t) + " outside motion capture range [" +
                       std::to_string(mocap.front().timestamp) + ", " + std::to_string(mocap.back().timestamp) + "]");
    }
    const auto hi = std::lower_bound(mocap.begin(), mocap.end(), t,
                                     [](const CameraPose& p, double v) { return p.timestamp < v; });
    if (hi->timestamp == t) {
      CameraPose exact = *hi;
      exact.orientation.normalize();
      out.push_back(exact);
      continue;
    }
    const CameraPose& b = *hi;
    const CameraPose& a = *(hi - 1);
    const double s = (t - a.timestamp) / (b.timestamp - a.timestamp);
    Eigen::Vector4d qa = a.orientation.coeffs();
    Eigen::Vector4d qb = b.orientation.coeffs();
    if (qa.dot(qb) < 0.0) qb = -qb;
    const Eigen::Vector4d q = ((1.0 - s) * qa + s * qb).normalized();
    CameraPose p;
    p.position = (1.0 - s) * a.position + s * b.position;
    p.orientation = Eigen::Quaterniond(q[3], q[0], q[1], q[2]);
    p.timestamp = t;
    out.push_back(p);
  }
  return out;
}

PlaneBasis basis_from_normal(const Eigen::Vector3d& normal) {
  PlaneBasis basis;
  basis.normal = normal.normalized();
  Eigen::Index axis = 0;
  basis.normal.cwiseAbs().minCoeff(&axis);
  basis.u1 = basis.normal.cross(Eigen::Vector3d::Unit(axis)).normalized();
  // u1 x u2 = -normal, the handedness of a camera's (right, up) pair.
  basis.u2 = basis.u1.cross(basis.normal);
  return basis;
}

PlaneBasis best_fit_plane(std::span<const CameraPose> poses) {
  if (poses.empty()) throw ArgumentError("best_fit_plane needs at least one pose");
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const CameraPose& p : poses) mean += forward(p);
  mean /= static_cast<double>(poses.size());
  if (mean.norm() < 1e-6) throw DegeneracyError("camera forward vectors cancel out; no dominant plane");
  return basis_from_normal(mean);
}

double max_angular_deviation(std::span<const CameraPose> poses, const Eigen::Vector3d& normal) {
  const Eigen::Vector3d n = normal.normalized();
  double worst = 0.0;
  for (const CameraPose& p : poses) {
    const Eigen::Vector3d f = forward(p);
    worst = std::max(worst, std::atan2(f.cross(n).norm(), f.dot(n)));
  }
  return worst * 180.0 / M_PI;
}

PlaneBasis camera_plane(const CameraPose& pose) { return {forward(pose), right(pose), up(pose)}; }

Eigen::MatrixX2d project_to_plane(std::span<const CameraPose> poses, const PlaneBasis& basis) {
  Eigen::MatrixX2d out(static_cast<Eigen::Index>(poses.size()), 2);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    out(static_cast<Eigen::Index>(i), 0) = basis.u1.dot(poses[i].position);
    out(static_cast<Eigen::Index>(i), 1) = basis.u2.dot(poses[i].position);
  }
  return out;
}

}  // namespace swipe::eval
