#include "swipe/pipeline/pipeline.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/extract.hpp"
#include "swipe/image_io.hpp"
#include "swipe/parallel.hpp"
#include "swipe/pipeline/ingest.hpp"

#include <cstdio>
#include <exception>
#include <set>

namespace swipe::pipeline {
namespace fs = std::filesystem;

namespace {

void note(const Logger& log, const std::string& message) {
  if (log) log(message);
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    std::throw_with_nested(StageError(name, e.what()));
  }
}

std::string numbered_name(std::size_t index, const std::string& name) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%06zu_", index);
  return prefix + name;
}

}  // namespace

layout::EstimateMap rotation_estimates(std::span<const Frame> frames, const layout::LayoutSolution& solution,
                                       const forest::Forest& rotation, int threads) {
  std::vector<layout::FramePair> loops;
  for (const layout::FramePair& p : solution.pairs.pairs()) {
    if (p.source == layout::PairSource::Loop) loops.push_back(p);
  }
  std::vector<std::optional<forest::MotionEstimate>> found(loops.size());
  parallel_for(loops.size(), threads, [&](std::size_t i) {
    const auto [j, k, source] = loops[i];
    const Eigen::Vector2d offset = solution.positions.row(k) - solution.positions.row(j);
    try {
      const auto [a, b] = layout::crop_for_rotation(frames[j], frames[k],
                                                    layout::layout_to_pixels(offset, frames[j].width()));
      found[i] = forest::predict(rotation, features::extract_features(a, b));
    } catch (const InsufficientOverlapError&) {
    }
  });
  layout::EstimateMap out;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (found[i]) out.emplace(loops[i].key(), *std::move(found[i]));
  }
  return out;
}

layout::LayoutSolution run_layout(std::span<const Frame> frames, const forest::Forest& translation,
                                  const forest::Forest* rotation, const LayoutOptions& options,
                                  const FeatureCache& cache, const Logger& log) {
  if (translation.label_dim() != 2) throw ArgumentError("translation forest must predict 2D labels");
  if (rotation != nullptr && rotation->label_dim() != 1) throw ArgumentError("rotation forest must predict 1D labels");
  const int n = static_cast<int>(frames.size());
  const layout::PairSet pairs = stage("pairs", [&] { return layout::select_pairs(n, options.window); });
  note(log, "selected " + std::to_string(pairs.size()) + " temporal pairs");

  const layout::EstimateMap temporal = stage("features", [&] {
    std::vector<forest::MotionEstimate> est(pairs.size());
    parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
      const layout::FramePair& p = pairs.pairs()[i];
      est[i] = forest::predict(translation, cache.features(frames[p.j], frames[p.k]));
    });
    layout::EstimateMap map;
    for (std::size_t i = 0; i < pairs.size(); ++i) map.emplace(pairs.pairs()[i].key(), std::move(est[i]));
    return map;
  });
  if (cache.enabled()) {
    note(log, "feature cache: " + std::to_string(cache.hits()) + " hits, " + std::to_string(cache.misses()) +
                  " misses");
  }

  layout::LayoutSolution solution = stage("layout", [&] { return layout::solve_layout(n, temporal); });
  if (options.loop_closure) {
    solution = stage("loop closure", [&] {
      std::vector<double> timestamps(frames.size());
      for (std::size_t i = 0; i < frames.size(); ++i) timestamps[i] = static_cast<double>(i);
      layout::LoopOptions loops = options.loops;
      loops.threads = options.threads;
      auto estimator = [&](int j, int k) {
        return forest::predict(translation, cache.features(frames[j], frames[k]));
      };
      return layout::close_loops(n, timestamps, temporal, estimator, loops);
    });
    note(log, "loop closure added " + std::to_string(solution.pairs.count(layout::PairSource::Loop)) + " pairs");
  }

  solution.rotations = Eigen::VectorXd::Zero(n);
  if (options.rotation_correction && rotation != nullptr) {
    solution.rotations = stage("rotation", [&] {
      const layout::EstimateMap est = rotation_estimates(frames, solution, *rotation, options.threads);
      note(log, "rotation estimates on " + std::to_string(est.size()) + " loop pairs");
      return layout::solve_rotations(n, est, options.rotation_weights);
    });
  }
  return solution;
}

void validate(const PipelineConfig& config) {
  if (config.layout.window < 1) throw ArgumentError("pair window must be >= 1");
  if (config.layout.loops.neighbors < 1) throw ArgumentError("loop neighbors must be >= 1");
  if (config.layout.loops.min_separation < 1) throw ArgumentError("loop separation must be >= 1");
  if (config.max_dim < 0) throw ArgumentError("working resolution cap must be >= 0");
  if (config.input.empty()) throw ArgumentError("no input given");
  if (config.output.empty()) throw ArgumentError("no output directory given");
}

MosaicManifest make_manifest(const layout::LayoutSolution& solution, std::span<const Frame> frames,
                             const std::vector<std::string>& images, std::string thumbnail) {
  if (images.size() != frames.size() || static_cast<std::size_t>(solution.frame_count()) != frames.size()) {
    throw ArgumentError("manifest needs one image and one position per frame");
  }
  MosaicManifest m;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double rotation = solution.rotations.size() == solution.frame_count() ? solution.rotations[row] : 0.0;
    m.frames.push_back({images[i], solution.positions(row, 0), solution.positions(row, 1), rotation,
                        frames[i].timestamp});
  }
  m.bounds = compute_bounds(m.frames);
  m.thumbnail = std::move(thumbnail);
  return m;
}

PipelineResult run_pipeline(const PipelineConfig& config, const Logger& log) {
  validate(config);
  const forest::Forest translation =
      stage("load forest", [&] { return forest::load_forest(config.translation_forest); });
  std::optional<forest::Forest> rotation;
  if (config.rotation_forest) {
    rotation = stage("load forest", [&] { return forest::load_forest(*config.rotation_forest); });
  }
  int max_dim = config.max_dim;
  if (max_dim == 0) max_dim = translation.frame_size().maxCoeff() > 0 ? translation.frame_size().maxCoeff() : 160;

  const IngestedFrames input = stage("ingest", [&] { return ingest(config.input, max_dim); });
  note(log, "ingested " + std::to_string(input.frames.size()) + " frames at " +
                std::to_string(input.frames[0].width()) + "x" + std::to_string(input.frames[0].height()));

  const FeatureCache cache = config.cache_dir ? FeatureCache(*config.cache_dir) : FeatureCache::from_environment();
  PipelineResult result;
  result.layout = run_layout(input.frames, translation, rotation ? &*rotation : nullptr, config.layout, cache, log);
  result.cache_hits = cache.hits();
  result.cache_misses = cache.misses();

  result.manifest = stage("export", [&] {
    fs::create_directories(config.output / "images");
    std::vector<std::string> images;
    for (std::size_t i = 0; i < input.sources.size(); ++i) {
      const std::string name = "images/" + numbered_name(i, input.sources[i].filename().string());
      fs::copy_file(input.sources[i], config.output / name, fs::copy_options::overwrite_existing);
      images.push_back(name);
    }
    MosaicManifest m = make_manifest(result.layout, input.frames, images);
    save_png(config.output / m.thumbnail, render_minimap(m));
    write_manifest(config.output / "manifest.json", m);
    return m;
  });
  note(log, "wrote " + (config.output / "manifest.json").string());
  return result;
}

MosaicManifest export_bundle(const MosaicManifest& manifest, const fs::path& source_dir, const fs::path& out_dir) {
  return stage("export", [&] {
    fs::create_directories(out_dir / "images");
    MosaicManifest m = manifest;
    std::set<std::string> used;
    for (std::size_t i = 0; i < m.frames.size(); ++i) {
      const fs::path src = source_dir / m.frames[i].image;
      if (!fs::exists(src)) throw IoError("missing image '" + src.string() + "'");
      const std::string file = fs::path(m.frames[i].image).filename().string();
      std::string name = "images/" + file;
      if (!used.insert(name).second) name = "images/" + numbered_name(i, file);
      const fs::path dst = out_dir / name;
      if (fs::weakly_canonical(src) != fs::weakly_canonical(dst)) {
        fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
      }
      m.frames[i].image = name;
    }
    m.bounds = compute_bounds(m.frames);
    if (m.thumbnail.empty()) m.thumbnail = "minimap.png";
    save_png(out_dir / m.thumbnail, render_minimap(m));
    write_manifest(out_dir / "manifest.json", m);
    return m;
  });
}

}  // namespace swipe::pipeline
