#include "swipe/synth/dataset.hpp"

#include "swipe/errors.hpp"
#include "swipe/features/feature_io.hpp"
#include "swipe/hash.hpp"
#include "swipe/parallel.hpp"
#include "swipe/random.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace swipe::synth {

std::string to_string(MotionKind kind) {
  return kind == MotionKind::Translation ? "translation" : "rotation";
}

MotionKind motion_kind_from_string(const std::string& name) {
  if (name == "translation") return MotionKind::Translation;
  if (name == "rotation") return MotionKind::Rotation;
  throw ArgumentError("unknown motion kind '" + name + "'");
}

TextureFamily sample_family(std::uint64_t seed, std::size_t index, const DatasetOptions& options) {
  Rng rng(mix_seed(seed, 2 * index));
  double total = 0.0;
  for (double w : options.family_weights) total += w;
  double pick = rng.uniform() * total;
  for (std::size_t f = 0; f < options.family_weights.size(); ++f) {
    pick -= options.family_weights[f];
    if (pick < 0.0) return static_cast<TextureFamily>(f);
  }
  return TextureFamily::Mixed;
}

LabeledPair make_pair(MotionKind kind, std::uint64_t seed, std::size_t index,
                      const DatasetOptions& options) {
  const TextureFamily family = sample_family(seed, index, options);
  const SceneSpec spec = random_scene(family, mix_seed(seed, 2 * index + 1), options.width, options.height);
  return kind == MotionKind::Translation ? generate_translation_pair(spec, options.max_shift)
                                         : generate_rotation_pair(spec, options.max_angle);
}

namespace {

Dataset allocate(std::size_t count, MotionKind kind) {
  Dataset data;
  data.kind = kind;
  data.features.resize(static_cast<Eigen::Index>(count), features::kFeatureDim);
  data.labels.resize(static_cast<Eigen::Index>(count), kind == MotionKind::Translation ? 2 : 1);
  data.families.resize(count);
  return data;
}

}  // namespace

Dataset generate_dataset(int count, MotionKind kind, std::uint64_t seed, const DatasetOptions& options) {
  if (count < 1) throw ArgumentError("dataset needs at least one pair");
  Dataset data = allocate(static_cast<std::size_t>(count), kind);
  data.frame_size = {options.width, options.height};
  parallel_for(static_cast<std::size_t>(count), options.threads, [&](std::size_t i) {
    const LabeledPair pair = make_pair(kind, seed, i, options);
    const auto row = static_cast<Eigen::Index>(i);
    data.features.row(row) = features::extract_features(pair.a, pair.b).transpose();
    data.labels.row(row) = pair.label.transpose();
    data.families[i] = pair.family;
  });
  return data;
}

Dataset featurize(const std::vector<LabeledPair>& pairs, MotionKind kind, int threads) {
  Dataset data = allocate(pairs.size(), kind);
  if (!pairs.empty()) data.frame_size = {pairs[0].a.width(), pairs[0].a.height()};
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    data.features.row(row) = features::extract_features(pairs[i].a, pairs[i].b).transpose();
    data.labels.row(row) = pairs[i].label.transpose();
    data.families[i] = pairs[i].family;
  });
  return data;
}

namespace {

std::string feature_name(Eigen::Index i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06ld.feat", static_cast<long>(i));
  return buf;
}

}  // namespace

void save_dataset(const std::filesystem::path& dir, const Dataset& data, std::uint64_t seed,
                  const DatasetOptions& options) {
  std::filesystem::create_directories(dir / "features");
  std::ofstream labels(dir / "labels.csv");
  if (!labels) throw IoError("cannot write labels in '" + dir.string() + "'");
  labels.precision(17);
  labels << (data.kind == MotionKind::Translation ? "index,dx,dy,family\n" : "index,angle,family\n");
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    features::write_features(dir / "features" / feature_name(i), data.features.row(i).transpose());
    labels << i;
    for (Eigen::Index c = 0; c < data.labels.cols(); ++c) labels << ',' << data.labels(i, c);
    labels << ',' << to_string(data.families[static_cast<std::size_t>(i)]) << '\n';
  }

  nlohmann::ordered_json manifest;
  manifest["version"] = 1;
  manifest["kind"] = to_string(data.kind);
  manifest["count"] = data.size();
  manifest["seed"] = seed;
  manifest["feature_dim"] = data.features.cols();
  manifest["width"] = options.width;
  manifest["height"] = options.height;
  manifest["max_shift"] = options.max_shift;
  manifest["max_angle"] = options.max_angle;
  manifest["family_weights"] = options.family_weights;
  manifest["encoding"] = features::encoding_fingerprint();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
}

Dataset load_dataset(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw IoError("missing manifest.json in '" + dir.string() + "'");
  const auto manifest = nlohmann::json::parse(mf);
  if (manifest.at("encoding").get<std::uint64_t>() != features::encoding_fingerprint()) {
    throw FormatError("dataset was built with a different feature encoding");
  }
  const auto count = manifest.at("count").get<std::size_t>();
  Dataset data = allocate(count, motion_kind_from_string(manifest.at("kind").get<std::string>()));
  data.frame_size = {manifest.at("width").get<int>(), manifest.at("height").get<int>()};

  std::ifstream labels(dir / "labels.csv");
  std::string line;
  std::getline(labels, line);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(labels, line)) throw FormatError("labels.csv is shorter than the manifest count");
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    for (Eigen::Index c = 0; c < data.labels.cols(); ++c) {
      std::getline(ss, cell, ',');
      data.labels(static_cast<Eigen::Index>(i), c) = std::stod(cell);
    }
    std::getline(ss, cell, ',');
    data.families[i] = family_from_string(cell);
    const auto v = features::read_features(dir / "features" / feature_name(static_cast<Eigen::Index>(i)));
    if (v.size() != data.features.cols()) throw FormatError("feature dimension mismatch in dataset");
    data.features.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return data;
}

}  // namespace swipe::synth
