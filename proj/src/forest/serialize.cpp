#include "swipe/binary_io.hpp"
#include "swipe/errors.hpp"
#include "swipe/forest/forest.hpp"
#include "swipe/hash.hpp"

#include <json.hpp>

#include <cstring>
#include <string>

namespace swipe::forest {
namespace {

constexpr char kMagic[4] = {'R', 'R', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

std::string serialize(const Forest& forest) {
  const ForestConfig& c = forest.config();
  ByteWriter w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(kVersion);
  w.put<std::int32_t>(c.tree_count);
  w.put<std::int32_t>(c.max_depth);
  w.put<std::int32_t>(c.candidate_splits);
  w.put<std::int32_t>(c.min_leaf);
  w.put<std::int32_t>(c.label_dim);
  w.put<std::uint64_t>(c.rng_seed);
  w.put<double>(c.sigma_floor);
  w.put<std::int32_t>(forest.feature_dim());
  w.put<std::int32_t>(forest.frame_size().x());
  w.put<std::int32_t>(forest.frame_size().y());
  w.put<std::uint32_t>(static_cast<std::uint32_t>(forest.trees().size()));
  for (const Tree& tree : forest.trees()) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(tree.nodes.size()));
    for (const Node& n : tree.nodes) {
      w.put<std::int32_t>(n.feature);
      w.put<float>(n.threshold);
      w.put<std::uint32_t>(n.left);
      w.put<std::uint32_t>(n.right);
      w.put<std::uint32_t>(n.count);
      for (int d = 0; d < c.label_dim; ++d) w.put<double>(n.value[d]);
    }
  }
  Fnv1a h;
  h.update(w.bytes());
  w.put<std::uint64_t>(h.digest());
  return w.take();
}

Forest deserialize(std::string_view bytes) {
  if (bytes.size() < sizeof kMagic + 8 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("not a forest file (bad magic)");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  ByteReader tail(bytes.substr(bytes.size() - 8));
  ByteReader r(body);
  char magic[4];
  r.raw(magic, sizeof magic);
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) throw FormatError("unsupported forest version " + std::to_string(version));
  Fnv1a h;
  h.update(body);
  if (h.digest() != tail.get<std::uint64_t>()) throw FormatError("forest checksum mismatch");

  ForestConfig c;
  c.tree_count = r.get<std::int32_t>();
  c.max_depth = r.get<std::int32_t>();
  c.candidate_splits = r.get<std::int32_t>();
  c.min_leaf = r.get<std::int32_t>();
  c.label_dim = r.get<std::int32_t>();
  c.rng_seed = r.get<std::uint64_t>();
  c.sigma_floor = r.get<double>();
  const auto feature_dim = r.get<std::int32_t>();
  Eigen::Vector2i frame_size;
  frame_size.x() = r.get<std::int32_t>();
  frame_size.y() = r.get<std::int32_t>();
  const auto tree_count = r.get<std::uint32_t>();
  if (c.label_dim != 1 && c.label_dim != 2) throw FormatError("bad label dimension in forest file");
  const std::size_t node_bytes = 20 + 8 * static_cast<std::size_t>(c.label_dim);

  std::vector<Tree> trees(tree_count);
  for (Tree& tree : trees) {
    const auto count = r.get<std::uint32_t>();
    if (count > r.remaining() / node_bytes) throw FormatError("unexpected end of data");
    tree.nodes.resize(count);
    for (Node& n : tree.nodes) {
      n.feature = r.get<std::int32_t>();
      n.threshold = r.get<float>();
      n.left = r.get<std::uint32_t>();
      n.right = r.get<std::uint32_t>();
      n.count = r.get<std::uint32_t>();
      for (int d = 0; d < c.label_dim; ++d) n.value[d] = r.get<double>();
    }
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes in forest file");
  try {
    return Forest(c, feature_dim, std::move(trees), frame_size);
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("invalid forest: ") + e.what());
  }
}

void save_forest(const std::filesystem::path& path, const Forest& forest) {
  write_file_atomic(path, serialize(forest));
}

Forest load_forest(const std::filesystem::path& path) {
  try {
    return deserialize(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string to_json(const Forest& forest, int indent) {
  const ForestConfig& c = forest.config();
  nlohmann::ordered_json j;
  j["config"] = {{"tree_count", c.tree_count},     {"max_depth", c.max_depth},
                 {"candidate_splits", c.candidate_splits}, {"min_leaf", c.min_leaf},
                 {"label_dim", c.label_dim},       {"rng_seed", c.rng_seed},
                 {"sigma_floor", c.sigma_floor}};
  j["feature_dim"] = forest.feature_dim();
  j["frame_size"] = {forest.frame_size().x(), forest.frame_size().y()};
  auto& trees = j["trees"] = nlohmann::ordered_json::array();
  for (const Tree& tree : forest.trees()) {
    auto nodes = nlohmann::ordered_json::array();
    for (const Node& n : tree.nodes) {
      if (n.is_leaf()) {
        std::vector<double> value(n.value.begin(), n.value.begin() + c.label_dim);
        nodes.push_back({{"leaf", value}, {"count", n.count}});
      } else {
        nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
      }
    }
    trees.push_back({{"depth", tree.depth()}, {"nodes", std::move(nodes)}});
  }
  return j.dump(indent);
}

}  // namespace swipe::forest
