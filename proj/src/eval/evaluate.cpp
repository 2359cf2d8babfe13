#include "swipe/eval/evaluate.hpp"

#include "swipe/errors.hpp"
#include "swipe/eval/ncc_align.hpp"
#include "swipe/features/extract.hpp"
#include "swipe/layout/pairs.hpp"
#include "swipe/parallel.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>

namespace swipe::eval {

std::string to_string(Method method) { return method == Method::Rrf ? "rrf" : "ncc"; }

Method method_from_string(const std::string& name) {
  if (name == "rrf") return Method::Rrf;
  if (name == "ncc") return Method::Ncc;
  throw ArgumentError("unknown method '" + name + "' (expected rrf or ncc)");
}

namespace {

template <typename Fn>
layout::EstimateMap estimate_all(const layout::PairSet& pairs, int threads, Fn&& fn) {
  std::vector<forest::MotionEstimate> out(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { out[i] = fn(pairs.pairs()[i]); });
  layout::EstimateMap map;
  for (std::size_t i = 0; i < pairs.size(); ++i) map.emplace(pairs.pairs()[i].key(), std::move(out[i]));
  return map;
}

}  // namespace

layout::EstimateMap ncc_estimates(std::span<const Frame> frames, const layout::PairSet& pairs, int threads) {
  return estimate_all(pairs, threads, [&](const layout::FramePair& p) {
    const NccAlignment a = ncc_align(frames[p.j].pixels, frames[p.k].pixels);
    forest::MotionEstimate est;
    est.mean = a.shift.cast<double>() / frames[p.j].width();
    est.sigma = Eigen::Vector2d::Ones();
    est.samples = est.mean.transpose();
    return est;
  });
}

layout::EstimateMap forest_estimates(std::span<const Frame> frames, const layout::PairSet& pairs,
                                     const forest::Forest& forest, int threads) {
  return estimate_all(pairs, threads, [&](const layout::FramePair& p) {
    return forest::predict(forest, features::extract_features(frames[p.j], frames[p.k]));
  });
}

Eigen::MatrixX2d layout_to_plane(const Eigen::MatrixX2d& positions) {
  Eigen::MatrixX2d out = positions;
  out.col(1) = -out.col(1);
  return out;
}

EvalReport score_layout(const layout::LayoutSolution& solution, std::span<const CameraPose> ground_truth,
                        Method method, int threads) {
  if (static_cast<std::size_t>(solution.frame_count()) != ground_truth.size()) {
    throw ArgumentError("ground truth must have one pose per frame");
  }
  EvalReport report;
  report.method = method;
  report.layout = solution;
  const Eigen::MatrixX2d candidate = layout_to_plane(solution.positions);
  const PlaneBasis plane = best_fit_plane(ground_truth);
  report.best_fit = procrustes_align(candidate, project_to_plane(ground_truth, plane));
  report.max_deviation_deg = max_angular_deviation(ground_truth, plane.normal);
  report.sweep_mse.resize(ground_truth.size());
  parallel_for(ground_truth.size(), threads, [&](std::size_t i) {
    const Eigen::MatrixX2d reference = project_to_plane(ground_truth, camera_plane(ground_truth[i]));
    report.sweep_mse[i] = procrustes_align(candidate, reference).mse;
  });
  return report;
}

EvalReport evaluate_pipeline(std::span<const Frame> frames, std::span<const CameraPose> ground_truth, Method method,
                             const forest::Forest* forest, const EvalOptions& options) {
  if (frames.size() != ground_truth.size()) throw ArgumentError("ground truth must have one pose per frame");
  if (method == Method::Rrf && forest == nullptr) throw ArgumentError("the rrf method needs a trained forest");
  const layout::PairSet pairs = layout::select_pairs(static_cast<int>(frames.size()), options.window);
  const layout::EstimateMap estimates = method == Method::Rrf
                                            ? forest_estimates(frames, pairs, *forest, options.threads)
                                            : ncc_estimates(frames, pairs, options.threads);
  return score_layout(layout::solve_layout(static_cast<int>(frames.size()), estimates), ground_truth, method,
                      options.threads);
}

void write_report_csv(const std::filesystem::path& path, std::span<const EvalReport> reports) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  out << "plane";
  for (const EvalReport& r : reports) out << ",mse_" << to_string(r.method);
  out << '\n' << std::setprecision(12) << "best_fit";
  for (const EvalReport& r : reports) out << ',' << r.best_fit.mse;
  out << '\n';
  const std::size_t planes = reports.empty() ? 0 : reports.front().sweep_mse.size();
  for (std::size_t i = 0; i < planes; ++i) {
    out << "camera_" << i;
    for (const EvalReport& r : reports) out << ',' << r.sweep_mse.at(i);
    out << '\n';
  }
}

std::string report_json(std::span<const EvalReport> reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const EvalReport& r : reports) {
    const auto& sweep = r.sweep_mse;
    nlohmann::ordered_json entry;
    entry["method"] = to_string(r.method);
    entry["frames"] = r.layout.frame_count();
    entry["pairs"] = r.layout.pairs.size();
    entry["best_fit_mse"] = r.best_fit.mse;
    entry["best_fit_scale"] = r.best_fit.transform.scale;
    entry["max_normal_deviation_deg"] = r.max_deviation_deg;
    if (!sweep.empty()) {
      entry["sweep_min_mse"] = *std::min_element(sweep.begin(), sweep.end());
      entry["sweep_max_mse"] = *std::max_element(sweep.begin(), sweep.end());
    }
    j.push_back(std::move(entry));
  }
  return j.dump(2);
}

}  // namespace swipe::eval
