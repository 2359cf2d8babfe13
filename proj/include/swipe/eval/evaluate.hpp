#pragma once

#include "swipe/eval/poses.hpp"
#include "swipe/eval/procrustes.hpp"
#include "swipe/forest/forest.hpp"
#include "swipe/image.hpp"
#include "swipe/layout/solver.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace swipe::eval {

enum class Method { Rrf, Ncc };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// Pairwise estimates from whole-frame NCC: mean = shift / width, unit sigma
/// (the baseline carries no uncertainty). Degenerate pairs estimate zero.
layout::EstimateMap ncc_estimates(std::span<const Frame> frames, const layout::PairSet& pairs, int threads = 0);

/// Pairwise forest predictions on extracted features.
layout::EstimateMap forest_estimates(std::span<const Frame> frames, const layout::PairSet& pairs,
                                     const forest::Forest& forest, int threads = 0);

/// Layout coordinates (x right, y down) as plane coordinates (x right, y up).
Eigen::MatrixX2d layout_to_plane(const Eigen::MatrixX2d& positions);

struct EvalOptions {
  int window = 4;
  int threads = 0;
};

struct EvalReport {
  Method method = Method::Rrf;
  layout::LayoutSolution layout;
  /// Alignment against the best-fit-plane projection of the ground truth.
  ProcrustesResult best_fit;
  double max_deviation_deg = 0.0;
  /// Procrustes MSE against each camera's (right, up) plane in turn.
  std::vector<double> sweep_mse;
};

/// Metrics of a solved layout against per-frame ground-truth poses.
EvalReport score_layout(const layout::LayoutSolution& solution, std::span<const CameraPose> ground_truth,
                        Method method, int threads = 0);

/// Window pairs, per-method estimates, layout solve and scoring. `forest` is
/// required for Method::Rrf.
EvalReport evaluate_pipeline(std::span<const Frame> frames, std::span<const CameraPose> ground_truth, Method method,
                             const forest::Forest* forest, const EvalOptions& options = {});

/// CSV columns: plane, then mse_<method> per report. Plane ids are
/// "best_fit" followed by "camera_<i>".
void write_report_csv(const std::filesystem::path& path, std::span<const EvalReport> reports);
std::string report_json(std::span<const EvalReport> reports);

}  // namespace swipe::eval
