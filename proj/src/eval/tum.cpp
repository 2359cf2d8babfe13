#include "swipe/eval/tum.hpp"

#include "swipe/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace swipe::eval {

std::vector<CameraPose> parse_tum(std::istream& in) {
  std::vector<CameraPose> poses;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    double v[8];
    for (double& x : v) {
      if (!(fields >> x)) throw FormatError("trajectory line " + std::to_string(number) + ": expected 8 numbers");
    }
    std::string extra;
    if (fields >> extra) throw FormatError("trajectory line " + std::to_string(number) + ": trailing fields");
    CameraPose p;
    p.timestamp = v[0];
    p.position = {v[1], v[2], v[3]};
    p.orientation = Eigen::Quaterniond(v[7], v[4], v[5], v[6]);
    const double norm = p.orientation.norm();
    if (!(norm > 1e-9)) throw FormatError("trajectory line " + std::to_string(number) + ": zero quaternion");
    p.orientation.normalize();
    poses.push_back(p);
  }
  return poses;
}

std::vector<CameraPose> read_tum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory '" + path.string() + "'");
  try {
    return parse_tum(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<TimedImage> read_tum_image_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open image list '" + path.string() + "'");
  std::vector<TimedImage> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    TimedImage item;
    std::string file;
    if (!(fields >> item.timestamp >> file)) {
      throw FormatError(path.string() + " line " + std::to_string(number) + ": expected 'timestamp filename'");
    }
    item.path = path.parent_path() / file;
    out.push_back(std::move(item));
  }
  return out;
}

void write_tum(std::ostream& out, std::span<const CameraPose> poses) {
  out << "# timestamp tx ty tz qx qy qz qw\n" << std::setprecision(17);
  for (const CameraPose& p : poses) {
    const auto& q = p.orientation;
    out << p.timestamp << ' ' << p.position.x() << ' ' << p.position.y() << ' ' << p.position.z() << ' ' << q.x()
        << ' ' << q.y() << ' ' << q.z() << ' ' << q.w() << '\n';
  }
}

void write_tum(const std::filesystem::path& path, std::span<const CameraPose> poses) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trajectory '" + path.string() + "'");
  write_tum(out, poses);
}

}  // namespace swipe::eval
