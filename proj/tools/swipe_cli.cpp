// Command-line front end: synth | train | layout | eval | export.

#include "swipe/errors.hpp"
#include "swipe/eval/evaluate.hpp"
#include "swipe/eval/tum.hpp"
#include "swipe/forest/forest.hpp"
#include "swipe/pipeline/ingest.hpp"
#include "swipe/pipeline/pipeline.hpp"
#include "swipe/synth/dataset.hpp"
#include "swipe/synth/sequence.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace swipe;

namespace {

void log_line(const std::string& message) { std::cerr << message << '\n'; }

void print_nested(const std::exception& e, int depth = 0) {
  std::cerr << (depth == 0 ? "error: " : "  caused by: ") << e.what() << '\n';
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    if (std::string(inner.what()) != e.what()) print_nested(inner, depth + 1);
  }
}

struct SynthArgs {
  std::string kind = "translation";
  int pairs = 1000;
  std::uint64_t seed = 1;
  fs::path out;
  synth::DatasetOptions options;
};

struct TrainArgs {
  std::string kind = "translation";
  int pairs = 8800;
  std::optional<fs::path> dataset;
  std::uint64_t data_seed = 1;
  forest::ForestConfig config;
  synth::DatasetOptions options;
  fs::path out;
  std::optional<fs::path> json;
  bool trees_set = false;
};

struct LayoutArgs {
  pipeline::PipelineConfig config;
  bool no_loops = false;
  bool no_rotation = false;
};

struct EvalArgs {
  std::optional<fs::path> frames;
  std::optional<fs::path> ground_truth;
  bool synthetic = false;
  int sweep_frames = 300;
  std::uint64_t seed = 1;
  int limit = 0;
  int max_dim = 0;
  std::optional<fs::path> forest;
  std::vector<std::string> methods = {"rrf", "ncc"};
  fs::path out = "eval_report";
  eval::EvalOptions options;
};

struct ExportArgs {
  fs::path manifest;
  fs::path out;
};

void run_synth(const SynthArgs& a) {
  const auto kind = synth::motion_kind_from_string(a.kind);
  const auto start = std::chrono::steady_clock::now();
  const synth::Dataset data = synth::generate_dataset(a.pairs, kind, a.seed, a.options);
  synth::save_dataset(a.out, data, a.seed, a.options);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log_line("wrote " + std::to_string(data.size()) + " " + a.kind + " pairs to " + a.out.string() + " in " +
           std::to_string(secs) + " s");
}

void run_train(TrainArgs a) {
  const auto kind = synth::motion_kind_from_string(a.kind);
  a.config.label_dim = kind == synth::MotionKind::Translation ? 2 : 1;
  a.config.sigma_floor =
      kind == synth::MotionKind::Translation ? forest::kTranslationSigmaFloor : forest::kRotationSigmaFloor;
  synth::Dataset data;
  if (a.dataset) {
    data = synth::load_dataset(*a.dataset);
    if (data.kind != kind) throw ArgumentError("dataset kind does not match --kind");
  } else {
    log_line("generating " + std::to_string(a.pairs) + " " + a.kind + " pairs");
    data = synth::generate_dataset(a.pairs, kind, a.data_seed, a.options);
  }
  const auto start = std::chrono::steady_clock::now();
  const forest::Forest f = forest::train(data.features, data.labels, a.config, data.frame_size);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  forest::save_forest(a.out, f);
  if (a.json) std::ofstream(*a.json) << forest::to_json(f) << '\n';
  log_line("trained " + std::to_string(f.trees().size()) + " trees on " + std::to_string(data.size()) +
           " pairs in " + std::to_string(secs) + " s -> " + a.out.string());
}

void run_layout(LayoutArgs a) {
  a.config.layout.loop_closure = !a.no_loops;
  a.config.layout.rotation_correction = !a.no_rotation;
  const auto result = pipeline::run_pipeline(a.config, log_line);
  log_line("layout of " + std::to_string(result.manifest.frames.size()) + " frames, " +
           std::to_string(result.layout.pairs.size()) + " pairs");
}

void run_eval(const EvalArgs& a) {
  std::optional<forest::Forest> f;
  if (a.forest) f = forest::load_forest(*a.forest);
  std::vector<Frame> frames;
  std::vector<eval::CameraPose> truth;
  if (a.synthetic) {
    synth::SweepOptions opts;
    opts.frames = a.sweep_frames;
    opts.seed = a.seed;
    synth::Sequence seq = synth::planar_sweep(opts);
    frames = std::move(seq.frames);
    truth = std::move(seq.poses);
  } else {
    if (!a.frames || !a.ground_truth) throw ArgumentError("eval needs --frames and --ground-truth, or --synthetic");
    auto list = eval::read_tum_image_list(*a.frames);
    if (a.limit > 0 && static_cast<int>(list.size()) > a.limit) list.resize(static_cast<std::size_t>(a.limit));
    std::vector<fs::path> files;
    std::vector<double> stamps;
    for (const auto& item : list) {
      files.push_back(item.path);
      stamps.push_back(item.timestamp);
    }
    int max_dim = a.max_dim;
    if (max_dim == 0) max_dim = f && f->frame_size().maxCoeff() > 0 ? f->frame_size().maxCoeff() : 160;
    frames = pipeline::ingest_files(files, max_dim).frames;
    for (std::size_t i = 0; i < frames.size(); ++i) frames[i].timestamp = stamps[i];
    truth = eval::interpolate_ground_truth(eval::read_tum(*a.ground_truth), stamps);
  }
  std::vector<eval::EvalReport> reports;
  for (const std::string& name : a.methods) {
    const eval::Method method = eval::method_from_string(name);
    log_line("evaluating " + name + " on " + std::to_string(frames.size()) + " frames");
    reports.push_back(eval::evaluate_pipeline(frames, truth, method, f ? &*f : nullptr, a.options));
    char line[128];
    std::snprintf(line, sizeof line, "%s: best-fit plane MSE %.6g (%.4g cm^2)", name.c_str(),
                  reports.back().best_fit.mse, reports.back().best_fit.mse * 1e4);
    std::cout << line << '\n';
  }
  fs::create_directories(a.out);
  eval::write_report_csv(a.out / "report.csv", reports);
  std::ofstream(a.out / "summary.json") << eval::report_json(reports) << '\n';
  log_line("wrote " + (a.out / "report.csv").string() + " and summary.json");
}

void run_export(const ExportArgs& a) {
  const pipeline::MosaicManifest m = pipeline::read_manifest(a.manifest);
  const auto out = pipeline::export_bundle(m, a.manifest.parent_path(), a.out);
  log_line("exported " + std::to_string(out.frames.size()) + " frames to " + a.out.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swipe mosaic: learned visual odometry layouts for video frames"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Render a labeled synthetic dataset and its features");
  synth_cmd->add_option("--kind", synth_args.kind, "translation or rotation")->capture_default_str();
  synth_cmd->add_option("--pairs", synth_args.pairs, "Number of pairs")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed, "Dataset seed")->capture_default_str();
  synth_cmd->add_option("--width", synth_args.options.width)->capture_default_str();
  synth_cmd->add_option("--height", synth_args.options.height)->capture_default_str();
  synth_cmd->add_option("--max-shift", synth_args.options.max_shift, "Translation range, image widths")->capture_default_str();
  synth_cmd->add_option("--max-angle", synth_args.options.max_angle, "Rotation range, degrees")->capture_default_str();
  synth_cmd->add_option("--threads", synth_args.options.threads, "0 = all cores")->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "Output directory")->required();

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a regression forest");
  train_cmd->add_option("--kind", train_args.kind, "translation or rotation")->capture_default_str();
  train_cmd->add_option("--pairs", train_args.pairs, "Pairs to generate when no dataset is given")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--dataset", train_args.dataset, "Dataset directory written by synth");
  train_cmd->add_option("--data-seed", train_args.data_seed, "Seed for generated pairs")->capture_default_str();
  train_cmd->add_option("--trees", train_args.config.tree_count)->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--depth", train_args.config.max_depth)->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--splits", train_args.config.candidate_splits, "Candidate splits per node")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--min-leaf", train_args.config.min_leaf)->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--seed", train_args.config.rng_seed, "Forest seed")->capture_default_str();
  train_cmd->add_option("--width", train_args.options.width)->capture_default_str();
  train_cmd->add_option("--height", train_args.options.height)->capture_default_str();
  train_cmd->add_option("--max-shift", train_args.options.max_shift)->capture_default_str();
  train_cmd->add_option("--max-angle", train_args.options.max_angle)->capture_default_str();
  train_cmd->add_option("--threads", train_args.config.threads)->capture_default_str();
  train_cmd->add_option("--json", train_args.json, "Also write a JSON dump");
  train_cmd->add_option("--out", train_args.out, "Forest file")->required();

  LayoutArgs layout_args;
  auto& lc = layout_args.config;
  auto* layout_cmd = app.add_subcommand("layout", "Lay out a frame sequence and write a viewer bundle");
  layout_cmd->add_option("--in", lc.input, "Directory of frames or frame list file")->required();
  layout_cmd->add_option("--out", lc.output, "Output bundle directory")->required();
  layout_cmd->add_option("--forest", lc.translation_forest, "Translation forest")->required();
  layout_cmd->add_option("--rotation-forest", lc.rotation_forest, "Rotation forest (enables rotation correction)");
  layout_cmd->add_option("--max-dim", lc.max_dim, "Working resolution cap (0 = forest frame size)")->capture_default_str();
  layout_cmd->add_option("--window", lc.layout.window, "Temporal pair window")->check(CLI::PositiveNumber)->capture_default_str();
  layout_cmd->add_option("--neighbors", lc.layout.loops.neighbors, "Loop-closure spatial neighbors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  layout_cmd->add_option("--separation", lc.layout.loops.min_separation, "Loop-closure frame separation")
      ->capture_default_str();
  layout_cmd->add_option("--loop-rounds", lc.layout.loops.iterations)->capture_default_str();
  layout_cmd->add_flag("--no-loops", layout_args.no_loops, "Skip loop closure");
  layout_cmd->add_flag("--no-rotation", layout_args.no_rotation, "Skip rotational correction");
  layout_cmd->add_option("--cache", lc.cache_dir, "Feature cache directory (default $SWIPE_CACHE_DIR)");
  layout_cmd->add_option("--threads", lc.layout.threads)->capture_default_str();

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Compare forest and NCC layouts against ground truth");
  eval_cmd->add_option("--frames", eval_args.frames, "Image list 'timestamp filename' (TUM rgb.txt)");
  eval_cmd->add_option("--ground-truth", eval_args.ground_truth, "TUM trajectory file");
  eval_cmd->add_option("--limit", eval_args.limit, "Use only the first N frames")->capture_default_str();
  eval_cmd->add_flag("--synthetic", eval_args.synthetic, "Evaluate on a rendered planar sweep");
  eval_cmd->add_option("--sweep-frames", eval_args.sweep_frames)->capture_default_str();
  eval_cmd->add_option("--seed", eval_args.seed, "Synthetic sweep seed")->capture_default_str();
  eval_cmd->add_option("--max-dim", eval_args.max_dim)->capture_default_str();
  eval_cmd->add_option("--forest", eval_args.forest, "Translation forest (needed for rrf)");
  eval_cmd->add_option("--methods", eval_args.methods, "rrf and/or ncc")->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--window", eval_args.options.window)->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--threads", eval_args.options.threads)->capture_default_str();
  eval_cmd->add_option("--out", eval_args.out, "Report directory")->capture_default_str();

  ExportArgs export_args;
  auto* export_cmd = app.add_subcommand("export", "Copy a manifest and its images into a viewer bundle");
  export_cmd->add_option("--manifest", export_args.manifest, "Existing manifest.json")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--out", export_args.out, "Bundle directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors map to 2.
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (*synth_cmd) run_synth(synth_args);
    if (*train_cmd) run_train(train_args);
    if (*layout_cmd) run_layout(layout_args);
    if (*eval_cmd) run_eval(eval_args);
    if (*export_cmd) run_export(export_args);
  } catch (const ArgumentError& e) {
    print_nested(e);
    return 2;
  } catch (const std::exception& e) {
    print_nested(e);
    return 1;
  }
  return 0;
}
