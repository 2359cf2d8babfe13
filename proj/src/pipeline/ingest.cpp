#include "swipe/pipeline/ingest.hpp"

#include "swipe/errors.hpp"
#include "swipe/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace swipe::pipeline {
namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

std::vector<fs::path> list_frames(const fs::path& input) {
  std::vector<fs::path> paths;
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && is_image_file(entry.path())) paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return paths;
  }
  std::ifstream list(input);
  if (!list) throw IoError("cannot open input '" + input.string() + "'");
  std::string line;
  while (std::getline(list, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    fs::path p(line.substr(start));
    paths.push_back(p.is_absolute() ? p : input.parent_path() / p);
  }
  return paths;
}

IngestedFrames ingest(const fs::path& input, int max_dim) {
  std::vector<fs::path> files = list_frames(input);
  if (files.size() < 2) {
    throw ArgumentError("input '" + input.string() + "' holds " + std::to_string(files.size()) +
                        " frame(s); at least two are required");
  }
  return ingest_files(std::move(files), max_dim);
}

IngestedFrames ingest_files(std::vector<fs::path> files, int max_dim) {
  if (max_dim < 1) throw ArgumentError("working resolution cap must be >= 1");
  if (files.size() < 2) throw ArgumentError("at least two frames are required");
  IngestedFrames out;
  out.sources = std::move(files);
  Eigen::Vector2i work = Eigen::Vector2i::Zero();
  double aspect = 0.0;
  for (std::size_t i = 0; i < out.sources.size(); ++i) {
    const fs::path& path = out.sources[i];
    const Image gray = to_grayscale(load_image(path));
    const double a = static_cast<double>(gray.cols()) / static_cast<double>(gray.rows());
    if (i == 0) {
      out.source_size = {static_cast<int>(gray.cols()), static_cast<int>(gray.rows())};
      work = working_size(out.source_size.x(), out.source_size.y(), max_dim);
      aspect = a;
    } else if (std::abs(a - aspect) > 0.05 * aspect) {
      throw ArgumentError("'" + path.string() + "' has aspect ratio " + std::to_string(a) + ", first frame has " +
                          std::to_string(aspect));
    }
    Image pixels = gray.cols() == work.x() && gray.rows() == work.y() ? gray : resize(gray, work.x(), work.y());
    out.frames.push_back(make_frame(std::move(pixels), static_cast<int>(i)));
  }
  return out;
}

}  // namespace swipe::pipeline
