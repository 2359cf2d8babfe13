#include "swipe/eval/procrustes.hpp"

#include "swipe/errors.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

namespace swipe::eval {

Eigen::MatrixX2d Similarity2D::apply(const Eigen::MatrixX2d& points) const {
  Eigen::MatrixX2d out = scale * points * rotation.transpose();
  out.rowwise() += translation.transpose();
  return out;
}

ProcrustesResult procrustes_align(const Eigen::MatrixX2d& candidate, const Eigen::MatrixX2d& reference) {
  if (candidate.rows() != reference.rows()) throw ArgumentError("trajectories differ in length");
  if (candidate.rows() < 2) throw ArgumentError("Procrustes needs at least two points");
  if (!candidate.allFinite() || !reference.allFinite()) throw ArgumentError("non-finite trajectory");
  const auto n = static_cast<double>(candidate.rows());
  const Eigen::RowVector2d mp = candidate.colwise().mean();
  const Eigen::RowVector2d mq = reference.colwise().mean();
  const Eigen::MatrixX2d p = candidate.rowwise() - mp;
  const Eigen::MatrixX2d q = reference.rowwise() - mq;
  const double var_q = q.squaredNorm() / n;
  if (var_q <= 1e-300) throw DegeneracyError("reference trajectory collapses to a single point");
  const double var_p = p.squaredNorm() / n;

  ProcrustesResult result;
  if (var_p > 1e-300) {
    const Eigen::Matrix2d cov = q.transpose() * p / n;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector2d s(1.0, 1.0);
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) s[1] = -1.0;
    result.transform.rotation = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
    result.transform.scale = svd.singularValues().dot(s) / var_p;
  } else {
    result.transform.scale = 0.0;
  }
  result.transform.translation =
      mq.transpose() - result.transform.scale * result.transform.rotation * mp.transpose();
  result.mse = (result.transform.apply(candidate) - reference).squaredNorm() / n;
  return result;
}

}  // namespace swipe::eval
