#include "support.hpp"

#include "swipe/errors.hpp"
#include "swipe/eval/evaluate.hpp"
#include "swipe/eval/ncc_align.hpp"
#include "swipe/eval/poses.hpp"
#include "swipe/eval/procrustes.hpp"
#include "swipe/eval/tum.hpp"
#include "swipe/synth/sequence.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace swipe;
using namespace swipe::eval;

namespace {

// Definition of the full surface: a against b zero-padded by (h-1, w-1).
ImageD brute_surface(const Image& a, const Image& b) {
  const auto h = a.rows();
  const auto w = a.cols();
  ImageD padded = ImageD::Zero(3 * h - 2, 3 * w - 2);
  padded.block(h - 1, w - 1, h, w) = b.cast<double>();
  const ImageD ad = a.cast<double>();
  ImageD out(2 * h - 1, 2 * w - 1);
  for (Eigen::Index y = 0; y < out.rows(); ++y) {
    for (Eigen::Index x = 0; x < out.cols(); ++x) {
      out(y, x) = test::zncc_at(ad, padded, static_cast<int>(x), static_cast<int>(y));
    }
  }
  return out;
}

Eigen::Vector2i first_argmax(const ImageD& s) {
  Eigen::Index by = 0;
  Eigen::Index bx = 0;
  for (Eigen::Index y = 0; y < s.rows(); ++y) {
    for (Eigen::Index x = 0; x < s.cols(); ++x) {
      if (s(y, x) > s(by, bx)) {
        by = y;
        bx = x;
      }
    }
  }
  return {static_cast<int>(bx), static_cast<int>(by)};
}

CameraPose facing(const Eigen::Vector3d& dir, const Eigen::Vector3d& pos = Eigen::Vector3d::Zero()) {
  CameraPose p;
  p.position = pos;
  p.orientation = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d(0, 0, -1), dir.normalized());
  return p;
}

Eigen::Matrix2d rotation(double deg) { return Eigen::Rotation2Dd(deg * M_PI / 180.0).toRotationMatrix(); }

Eigen::MatrixX2d random_points(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixX2d p(n, 2);
  for (int i = 0; i < n; ++i) p.row(i) = Eigen::RowVector2d(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
  return p;
}

// For a fixed angle the best scale and translation solve a linear least
// squares problem; the angle is found by grid search plus golden section.
double brute_procrustes_mse(const Eigen::MatrixX2d& cand, const Eigen::MatrixX2d& ref) {
  const auto n = cand.rows();
  auto mse_at = [&](double theta) {
    const Eigen::Matrix2d r = Eigen::Rotation2Dd(theta).toRotationMatrix();
    const Eigen::MatrixX2d rp = cand * r.transpose();
    Eigen::MatrixXd A(2 * n, 3);
    Eigen::VectorXd b(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A.row(2 * i) << rp(i, 0), 1, 0;
      A.row(2 * i + 1) << rp(i, 1), 0, 1;
      b[2 * i] = ref(i, 0);
      b[2 * i + 1] = ref(i, 1);
    }
    const Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
    if (x[0] < 0) return std::numeric_limits<double>::infinity();
    return (A * x - b).squaredNorm() / static_cast<double>(n);
  };
  const int steps = 3600;
  double best = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int s = 0; s < steps; ++s) {
    const double th = 2 * M_PI * s / steps;
    const double v = mse_at(th);
    if (v < best_val) {
      best_val = v;
      best = th;
    }
  }
  double lo = best - 2 * M_PI / steps;
  double hi = best + 2 * M_PI / steps;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = hi - g * (hi - lo);
    const double d = lo + g * (hi - lo);
    if (mse_at(c) < mse_at(d)) hi = d;
    else lo = c;
  }
  return std::min(best_val, mse_at((lo + hi) / 2));
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("identical frames align at zero") {
  const Image a = test::noise_image(48, 36, 1);
  const NccAlignment r = ncc_align(a, a);
  CHECK(r.shift == Eigen::Vector2i(0, 0));
  CHECK(r.score == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("planted shifts are recovered and antisymmetric") {
  const Image a = test::noise_image(80, 60, 2);
  const Image b = test::noise_image(80, 60, 2, 12, -7);
  CHECK(ncc_align(a, b).shift == Eigen::Vector2i(12, -7));
  CHECK(ncc_align(b, a).shift == Eigen::Vector2i(-12, 7));
  for (int t = 0; t < 10; ++t) {
    Rng rng(mix_seed(3, t));
    const int dx = static_cast<int>(rng.below(31)) - 15;
    const int dy = static_cast<int>(rng.below(21)) - 10;
    const Image p = test::noise_image(64, 48, 100 + t);
    const Image q = test::noise_image(64, 48, 100 + t, dx, dy);
    const Eigen::Vector2i fwd = ncc_align(p, q).shift;
    CHECK(fwd == Eigen::Vector2i(dx, dy));
    CHECK(ncc_align(q, p).shift == -fwd);
  }
}

TEST_CASE("the NCC surface matches the brute-force definition") {
  for (int t = 0; t < 3; ++t) {
    const Image a = test::noise_image(16, 12, 20 + t);
    const Image b = test::noise_image(16, 12, 20 + t, 3 - t, 2 * t - 2);
    const ImageD fast = ncc_surface(a, b);
    const ImageD slow = brute_surface(a, b);
    REQUIRE(fast.rows() == slow.rows());
    REQUIRE(fast.cols() == slow.cols());
    CHECK((fast - slow).abs().maxCoeff() < 1e-6);
    const Eigen::Vector2i peak = first_argmax(slow);
    const Eigen::Vector2i lag(peak.x() - 15, peak.y() - 11);
    CHECK(ncc_align(a, b).shift == -lag);
  }
}

TEST_CASE("flat frames are degenerate") {
  const Image flat = Image::Constant(20, 30, 0.5f);
  const NccAlignment r = ncc_align(flat, flat);
  CHECK(r.degenerate);
  CHECK(r.shift == Eigen::Vector2i(0, 0));
  CHECK_THROWS_AS(ncc_align(flat, Image::Constant(20, 31, 0.5f)), ArgumentError);
}

TEST_CASE("ground truth interpolation") {
  std::vector<CameraPose> mocap(2);
  mocap[0].timestamp = 0.0;
  mocap[1].timestamp = 1.0;
  mocap[1].position = {2, 0, 0};
  mocap[1].orientation = Eigen::Quaterniond(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ()));
  const std::vector<double> times = {0.0, 0.5, 1.0};
  const auto out = interpolate_ground_truth(mocap, times);
  REQUIRE(out.size() == 3);
  CHECK(out[0].position == mocap[0].position);
  CHECK(out[2].orientation.coeffs() == mocap[1].orientation.coeffs());
  CHECK((out[1].position - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
  CHECK(out[1].timestamp == 0.5);
  const Eigen::Quaterniond expect(Eigen::AngleAxisd(M_PI / 4, Eigen::Vector3d::UnitZ()));
  CHECK(out[1].orientation.angularDistance(expect) < 1e-6);

  const std::vector<double> outside = {1.5};
  CHECK_THROWS_AS(interpolate_ground_truth(mocap, outside), RangeError);
  std::vector<CameraPose> unordered = mocap;
  unordered[1].timestamp = 0.0;
  CHECK_THROWS_AS(interpolate_ground_truth(unordered, times), ArgumentError);
}

TEST_CASE("interpolated orientations stay unit length and take the short arc") {
  Rng rng(8);
  std::vector<CameraPose> mocap(20);
  for (int i = 0; i < 20; ++i) {
    mocap[i].timestamp = i * 0.1;
    mocap[i].orientation = Eigen::Quaterniond::UnitRandom();
    if (i % 3 == 0) mocap[i].orientation.coeffs() *= -1;
  }
  std::vector<double> times;
  for (int i = 0; i < 200; ++i) times.push_back(rng.uniform(0.0, 1.9));
  for (const CameraPose& p : interpolate_ground_truth(mocap, times)) {
    CHECK(std::abs(p.orientation.norm() - 1.0) < 1e-9);
  }
  // Sign-flipped copies of the same rotation interpolate to that rotation.
  std::vector<CameraPose> same(2);
  same[1].timestamp = 1.0;
  same[0].orientation = Eigen::Quaterniond(Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitX()));
  same[1].orientation.coeffs() = -same[0].orientation.coeffs();
  const std::vector<double> mid = {0.5};
  CHECK(interpolate_ground_truth(same, mid)[0].orientation.angularDistance(same[0].orientation) < 1e-9);
}

TEST_CASE("camera axes") {
  const CameraPose id;
  CHECK(forward(id) == Eigen::Vector3d(0, 0, -1));
  CHECK(right(id) == Eigen::Vector3d(1, 0, 0));
  CHECK(up(id) == Eigen::Vector3d(0, 1, 0));
}

TEST_CASE("best-fit planes") {
  const std::vector<CameraPose> plus_z = {facing({0, 0, 1}), facing({0, 0, 1})};
  CHECK((best_fit_plane(plus_z).normal - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);

  const std::vector<CameraPose> two = {facing({1, 0, 0}), facing({0, 1, 0})};
  const PlaneBasis b = best_fit_plane(two);
  CHECK((b.normal - Eigen::Vector3d(1, 1, 0) / std::sqrt(2.0)).norm() < 1e-12);
  CHECK(max_angular_deviation(two, b.normal) == doctest::Approx(45.0));

  const std::vector<CameraPose> opposed = {facing({1, 0, 0}), facing({-1, 0, 0})};
  CHECK_THROWS_AS(best_fit_plane(opposed), DegeneracyError);
  CHECK_THROWS_AS(best_fit_plane(std::vector<CameraPose>{}), ArgumentError);
}

TEST_CASE("plane bases are orthonormal and camera-handed") {
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector3d n = Eigen::Quaterniond::UnitRandom() * Eigen::Vector3d::UnitX();
    const PlaneBasis b = basis_from_normal(n);
    CHECK(std::abs(b.u1.dot(b.u2)) < 1e-9);
    CHECK(std::abs(b.u1.dot(b.normal)) < 1e-9);
    CHECK(std::abs(b.u2.dot(b.normal)) < 1e-9);
    CHECK(std::abs(b.u1.norm() - 1) < 1e-9);
    CHECK(std::abs(b.u2.norm() - 1) < 1e-9);
    CHECK((b.u1.cross(b.u2) + b.normal).norm() < 1e-9);
  }
  CameraPose cam;
  cam.orientation = Eigen::Quaterniond::UnitRandom();
  const PlaneBasis c = camera_plane(cam);
  CHECK((c.u1 - right(cam)).norm() < 1e-12);
  CHECK((c.u2 - up(cam)).norm() < 1e-12);
  CHECK((c.normal - forward(cam)).norm() < 1e-12);
}

TEST_CASE("projection onto a plane") {
  PlaneBasis b{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const std::vector<CameraPose> poses = {facing({0, 0, 1}, {1, 2, 3}), facing({0, 0, 1}, {0, 0, 5})};
  const Eigen::MatrixX2d p = project_to_plane(poses, b);
  CHECK(p.row(0) == Eigen::RowVector2d(1, 2));
  CHECK(p.row(1) == Eigen::RowVector2d(0, 0));
  CHECK(procrustes_align(p, p).mse < 1e-20);
}

TEST_CASE("procrustes recovers exact similarities") {
  const Eigen::MatrixX2d ref = random_points(30, 9);
  const ProcrustesResult same = procrustes_align(ref, ref);
  CHECK(same.mse < 1e-20);
  CHECK(same.transform.scale == doctest::Approx(1.0));
  CHECK((same.transform.rotation - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  CHECK(same.transform.translation.norm() < 1e-12);

  Similarity2D fwd;
  fwd.scale = 2.5;
  fwd.rotation = rotation(30);
  fwd.translation = {3, -1};
  const Eigen::MatrixX2d moved = fwd.apply(ref);
  const ProcrustesResult back = procrustes_align(moved, ref);
  CHECK(back.mse < 1e-10);
  CHECK(back.transform.scale == doctest::Approx(1 / 2.5));
  CHECK((back.transform.rotation - rotation(-30)).norm() < 1e-9);
  CHECK((back.transform.apply(moved) - ref).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("procrustes matches a numeric minimization") {
  for (int t = 0; t < 10; ++t) {
    const Eigen::MatrixX2d ref = random_points(12, mix_seed(10, t));
    Similarity2D s;
    s.scale = 0.5 + t * 0.3;
    s.rotation = rotation(37.0 * t);
    s.translation = {t * 0.1, -0.5};
    const Eigen::MatrixX2d cand = s.apply(ref) + 0.2 * random_points(12, mix_seed(11, t));
    CHECK(std::abs(procrustes_align(cand, ref).mse - brute_procrustes_mse(cand, ref)) < 1e-6);
  }
}

TEST_CASE("procrustes error is similarity invariant and excludes reflections") {
  const Eigen::MatrixX2d ref = random_points(25, 12);
  const Eigen::MatrixX2d cand = ref + 0.3 * random_points(25, 13);
  const double base = procrustes_align(cand, ref).mse;
  for (int t = 0; t < 10; ++t) {
    Similarity2D s;
    s.scale = 0.1 + t;
    s.rotation = rotation(t * 71.0);
    s.translation = {t * 1.5, -t * 2.0};
    CHECK(std::abs(procrustes_align(s.apply(cand), ref).mse - base) < 1e-9);
  }
  Eigen::MatrixX2d mirrored = ref;
  mirrored.col(1) *= -1;
  const ProcrustesResult r = procrustes_align(mirrored, ref);
  CHECK(r.transform.rotation.determinant() == doctest::Approx(1.0));
  CHECK(r.mse > 0.1);

  CHECK_THROWS_AS(procrustes_align(ref, Eigen::MatrixX2d::Ones(25, 2)), DegeneracyError);
  CHECK_THROWS_AS(procrustes_align(ref.topRows(3), ref), ArgumentError);
  CHECK(procrustes_align(Eigen::MatrixX2d::Zero(25, 2), ref).transform.scale == 0.0);
}

TEST_CASE("TUM trajectories parse and round-trip") {
  std::istringstream in(
      "# ground truth\n"
      "1.0 0.1 0.2 0.3 0 0 0 1\n"
      "\n"
      "1.5 1 2 3 0 0 0 2\n");
  const auto poses = parse_tum(in);
  REQUIRE(poses.size() == 2);
  CHECK(poses[0].timestamp == 1.0);
  CHECK(poses[0].position == Eigen::Vector3d(0.1, 0.2, 0.3));
  CHECK(poses[1].orientation.w() == doctest::Approx(1.0));

  std::ostringstream out;
  write_tum(out, poses);
  std::istringstream again(out.str());
  const auto back = parse_tum(again);
  REQUIRE(back.size() == 2);
  CHECK(back[1].position == poses[1].position);

  std::istringstream bad("1.0 0 0 0 0 0 0 1\n2.0 0 0 x 0 0 0 1\n");
  try {
    parse_tum(bad);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  std::istringstream zero("1.0 0 0 0 0 0 0 0\n");
  CHECK_THROWS_AS(parse_tum(zero), FormatError);
}

TEST_CASE("TUM image lists resolve relative paths") {
  const auto dir = std::filesystem::temp_directory_path() / "swipe_tum_list";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "rgb.txt") << "# timestamp filename\n0.5 rgb/a.png\n0.6 rgb/b.png\n";
  const auto list = read_tum_image_list(dir / "rgb.txt");
  REQUIRE(list.size() == 2);
  CHECK(list[1].timestamp == 0.6);
  CHECK(list[1].path == dir / "rgb/b.png");
  std::filesystem::remove_all(dir);
}

TEST_CASE("exact layouts score zero against ground truth") {
  Rng rng(14);
  const int n = 30;
  std::vector<CameraPose> truth(n);
  layout::LayoutSolution sol;
  sol.positions.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, 3.0);
    const double y = rng.uniform(0.0, 1.0);
    sol.positions.row(i) = Eigen::RowVector2d(x, y);
    truth[i].position = Eigen::Vector3d(x, -y, 0.0) * 0.16;
  }
  const EvalReport r = score_layout(sol, truth, Method::Ncc);
  CHECK(r.best_fit.mse < 1e-20);
  CHECK(r.sweep_mse.size() == n);
  for (double m : r.sweep_mse) CHECK(m < 1e-20);
  CHECK(r.max_deviation_deg == doctest::Approx(0.0));

  layout::LayoutSolution flipped = sol;
  flipped.positions.col(1) *= -1;
  CHECK(score_layout(flipped, truth, Method::Ncc).best_fit.mse > 1e-4);
}

TEST_CASE("method names") {
  CHECK(to_string(Method::Rrf) == "rrf");
  CHECK(method_from_string("ncc") == Method::Ncc);
  CHECK_THROWS_AS(method_from_string("sift"), ArgumentError);
}

TEST_CASE("NCC pipeline on a short textured sweep") {
  synth::SweepOptions opts;
  opts.frames = 16;
  opts.width = 64;
  opts.height = 48;
  opts.step = 0.05;
  opts.meander = 0.05;
  opts.low_contrast_segment = false;
  opts.periodic_segment = false;
  const synth::Sequence seq = synth::planar_sweep(opts);
  CHECK_THROWS_AS(evaluate_pipeline(seq.frames, seq.poses, Method::Rrf, nullptr), ArgumentError);
  const EvalReport r = evaluate_pipeline(seq.frames, seq.poses, Method::Ncc, nullptr);
  CHECK(r.layout.frame_count() == 16);
  CHECK(r.layout.pairs.size() == 16 * 4 - 10);
  const double extent = (seq.poses.back().position - seq.poses.front().position).squaredNorm();
  CHECK(r.best_fit.mse < 1e-3 * extent);

  const std::vector<EvalReport> reports = {r};
  const auto path = std::filesystem::temp_directory_path() / "swipe_report.csv";
  write_report_csv(path, reports);
  std::ifstream csv(path);
  std::string header;
  std::string first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "plane,mse_ncc");
  CHECK(first.rfind("best_fit,", 0) == 0);
  std::filesystem::remove(path);
  CHECK(report_json(reports).find("\"best_fit_mse\"") != std::string::npos);
}

}  // TEST_SUITE
