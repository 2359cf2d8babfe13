#include "swipe/layout/rotation.hpp"

#include "swipe/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>

namespace swipe::layout {

Eigen::VectorXd solve_rotations(int frame_count, const EstimateMap& estimates, const RotationWeights& weights) {
  if (frame_count < 1) throw ArgumentError("frame_count must be >= 1");
  if (weights.smoothness < 0.0 || weights.zero_prior < 0.0) throw ArgumentError("weights must be non-negative");
  Eigen::VectorXd rotations = Eigen::VectorXd::Zero(frame_count);
  if (frame_count == 1) return rotations;

  // Unknowns r_1 .. r_{N-1}; r_0 is held at zero and drops out.
  const int n = frame_count - 1;
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> rhs;
  auto add_difference = [&](int j, int k, double w, double target) {
    const auto row = static_cast<int>(rhs.size());
    if (k > 0) triplets.emplace_back(row, k - 1, w);
    if (j > 0) triplets.emplace_back(row, j - 1, -w);
    rhs.push_back(w * target);
  };
  for (const auto& [key, est] : estimates) {
    const auto [j, k] = key;
    if (j < 0 || k >= frame_count || j >= k) throw ArgumentError("invalid rotation pair");
    if (est.mean.size() != 1 || est.sigma.size() != 1) throw ArgumentError("rotation estimates must be 1D");
    if (!(est.sigma[0] > 0.0)) throw ArgumentError("sigma must be positive");
    add_difference(j, k, 1.0 / est.sigma[0], est.mean[0]);
  }
  const double prior = std::sqrt(weights.zero_prior);
  const double smooth = std::sqrt(weights.smoothness);
  for (int i = 1; i < frame_count; ++i) {
    add_difference(0, i, prior, 0.0);
    add_difference(i - 1, i, smooth, 0.0);
  }

  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(rhs.size()), n);
  A.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::SparseMatrix<double> At = A.transpose();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(At * A);
  if (ldlt.info() != Eigen::Success) throw DegeneracyError("rotation system is singular");
  rotations.tail(n) = ldlt.solve(At * b);
  if (!rotations.allFinite()) throw DegeneracyError("rotation system is singular");
  return rotations;
}

}  // namespace swipe::layout
