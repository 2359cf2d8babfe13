#include "swipe/layout/solver.hpp"

#include "swipe/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <numeric>
#include <string>

namespace swipe::layout {
namespace {

void check_estimates(int frame_count, const EstimateMap& estimates) {
  if (frame_count < 1) throw ArgumentError("frame_count must be >= 1");
  for (const auto& [key, est] : estimates) {
    const auto [j, k] = key;
    if (j < 0 || k >= frame_count || j >= k) {
      throw ArgumentError("invalid pair (" + std::to_string(j) + ", " + std::to_string(k) + ")");
    }
    if (est.mean.size() != 2 || est.sigma.size() != 2) throw ArgumentError("layout estimates must be 2D");
    if (!est.mean.allFinite()) throw ArgumentError("non-finite motion estimate");
    if (!(est.sigma.array() > 0.0).all() || !est.sigma.allFinite()) throw ArgumentError("sigma must be positive");
  }
}

}  // namespace

std::vector<std::vector<int>> connected_components(int frame_count, const EstimateMap& estimates) {
  std::vector<int> parent(static_cast<std::size_t>(frame_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& [key, est] : estimates) {
    const int a = root(key.first);
    const int b = root(key.second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> components;
  std::vector<int> slot(static_cast<std::size_t>(frame_count), -1);
  for (int i = 0; i < frame_count; ++i) {
    const int r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[slot[r]].push_back(i);
  }
  return components;
}

LayoutProblem build_problem(int frame_count, const EstimateMap& estimates) {
  check_estimates(frame_count, estimates);
  const auto rows = static_cast<Eigen::Index>(2 * estimates.size() + 2);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * estimates.size() + 2);
  LayoutProblem p;
  p.b.resize(rows);
  double heaviest = 1.0;
  Eigen::Index row = 0;
  for (const auto& [key, est] : estimates) {
    const auto [j, k] = key;
    for (int axis = 0; axis < 2; ++axis, ++row) {
      const double w = 1.0 / est.sigma[axis];
      heaviest = std::max(heaviest, w);
      triplets.emplace_back(row, 2 * k + axis, w);
      triplets.emplace_back(row, 2 * j + axis, -w);
      p.b[row] = w * est.mean[axis];
    }
  }
  const double anchor = kAnchorWeight * heaviest;
  for (int axis = 0; axis < 2; ++axis, ++row) {
    triplets.emplace_back(row, axis, anchor);
    p.b[row] = 0.0;
  }
  p.A.resize(rows, 2 * frame_count);
  p.A.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

double layout_energy(const Eigen::MatrixX2d& positions, const EstimateMap& estimates) {
  double e = 0.0;
  for (const auto& [key, est] : estimates) {
    const Eigen::Vector2d d = positions.row(key.second) - positions.row(key.first);
    e += ((d - est.mean).array() / est.sigma.array()).square().sum();
  }
  return e;
}

LayoutSolution solve_layout(int frame_count, const EstimateMap& estimates) {
  PairSet pairs;
  for (const auto& [key, est] : estimates) pairs.add(key.first, key.second, PairSource::Temporal);
  return solve_layout(frame_count, estimates, std::move(pairs));
}

LayoutSolution solve_layout(int frame_count, const EstimateMap& estimates, PairSet pairs) {
  if (pairs.size() != estimates.size() ||
      !std::all_of(pairs.pairs().begin(), pairs.pairs().end(),
                   [&](const FramePair& p) { return estimates.count(p.key()) == 1; })) {
    throw ArgumentError("pair set does not match the estimate keys");
  }
  LayoutProblem problem = build_problem(frame_count, estimates);
  const auto components = connected_components(frame_count, estimates);
  if (components.size() > 1) {
    std::string what = "pair graph is disconnected into " + std::to_string(components.size()) + " components:";
    for (const auto& c : components) {
      what += " [" + std::to_string(c.front());
      if (c.size() > 1) what += ".." + std::to_string(c.back()) + " (" + std::to_string(c.size()) + " frames)";
      what += "]";
    }
    throw DisconnectedGraphError(what, components);
  }

  const Eigen::SparseMatrix<double> At = problem.A.transpose();
  const Eigen::SparseMatrix<double> normal = At * problem.A;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(normal);
  if (ldlt.info() != Eigen::Success) throw DegeneracyError("layout normal equations are singular");
  const Eigen::VectorXd x = ldlt.solve(At * problem.b);

  LayoutSolution sol;
  sol.positions = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>>(x.data(), frame_count, 2);
  // The pair energy is translation invariant, so shifting removes the tiny
  // residual offset a finite anchor weight leaves on frame 0.
  const Eigen::RowVector2d origin = sol.positions.row(0);
  sol.positions.rowwise() -= origin;
  if (!sol.positions.allFinite()) throw DegeneracyError("layout solve produced non-finite positions");
  sol.pairs = std::move(pairs);
  return sol;
}

}  // namespace swipe::layout
