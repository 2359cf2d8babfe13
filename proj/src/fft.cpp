#include "swipe/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace swipe::fft {

namespace {

using Complex = std::complex<double>;

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans use FFTW_ESTIMATE (no timing measurements) and always run on
// fftw_malloc'd scratch buffers, so the algorithm and the SIMD alignment are
// the same on every call and results are bit-stable.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rows, int cols, bool inverse) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rows, cols, inverse);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const int half = cols / 2 + 1;
    double* real = fftw_alloc_real(static_cast<std::size_t>(rows) * cols);
    fftw_complex* spec = fftw_alloc_complex(static_cast<std::size_t>(rows) * half);
    const unsigned flags = FFTW_ESTIMATE | (inverse ? 0u : FFTW_PRESERVE_INPUT);
    fftw_plan plan = inverse ? fftw_plan_dft_c2r_2d(rows, cols, spec, real, flags)
                             : fftw_plan_dft_r2c_2d(rows, cols, real, spec, flags);
    fftw_free(real);
    fftw_free(spec);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

template <typename T>
struct FftwBuffer {
  T* data = nullptr;
  std::size_t size = 0;

  ~FftwBuffer() { fftw_free(data); }

  T* reserve(std::size_t n) {
    if (n > size) {
      fftw_free(data);
      data = static_cast<T*>(fftw_malloc(n * sizeof(T)));
      size = n;
    }
    return data;
  }
};

struct Scratch {
  FftwBuffer<double> real;
  FftwBuffer<fftw_complex> spec;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

int good_size(int n) {
  if (n <= 1) return 1;
  for (int m = n;; ++m) {
    int k = m;
    for (int p : {2, 3, 5}) {
      while (k % p == 0) k /= p;
    }
    if (k == 1) return m;
  }
}

Spectrum forward(const ImageD& src, int rows, int cols) {
  const int half = cols / 2 + 1;
  auto& buf = scratch();
  double* real = buf.real.reserve(static_cast<std::size_t>(rows) * cols);
  fftw_complex* spec = buf.spec.reserve(static_cast<std::size_t>(rows) * half);
  Eigen::Map<ImageD> padded(real, rows, cols);
  padded.setZero();
  padded.topLeftCorner(src.rows(), src.cols()) = src;
  fftw_execute_dft_r2c(plans().get(rows, cols, false), real, spec);
  return Eigen::Map<Spectrum>(reinterpret_cast<Complex*>(spec), rows, half);
}

ImageD inverse(const Spectrum& half, int rows, int cols) {
  auto& buf = scratch();
  double* real = buf.real.reserve(static_cast<std::size_t>(rows) * cols);
  fftw_complex* spec = buf.spec.reserve(static_cast<std::size_t>(half.size()));
  Eigen::Map<Spectrum>(reinterpret_cast<Complex*>(spec), half.rows(), half.cols()) = half;
  fftw_execute_dft_c2r(plans().get(rows, cols, true), spec, real);
  return Eigen::Map<ImageD>(real, rows, cols) * (1.0 / (static_cast<double>(rows) * cols));
}

ImageD correlate_valid(const ImageD& t, const ImageD& s) {
  const int rows = good_size(static_cast<int>(s.rows()));
  const int cols = good_size(static_cast<int>(s.cols()));
  const Spectrum ft = forward(t, rows, cols);
  const Spectrum fs = forward(s, rows, cols);
  const ImageD full = inverse(ft.conjugate() * fs, rows, cols);
  return full.topLeftCorner(s.rows() - t.rows() + 1, s.cols() - t.cols() + 1);
}

ImageD correlate_full(const ImageD& t, const ImageD& s) {
  const Eigen::Index out_h = s.rows() + t.rows() - 1;
  const Eigen::Index out_w = s.cols() + t.cols() - 1;
  const int rows = good_size(static_cast<int>(out_h));
  const int cols = good_size(static_cast<int>(out_w));
  const Spectrum ft = forward(t, rows, cols);
  const Spectrum fs = forward(s, rows, cols);
  // Circular lag d lives at index d mod size; unwrap negative lags.
  const ImageD circ = inverse(ft.conjugate() * fs, rows, cols);
  ImageD out(out_h, out_w);
  for (Eigen::Index y = 0; y < out_h; ++y) {
    const Eigen::Index dy = y - (t.rows() - 1);
    const Eigen::Index cy = (dy + rows) % rows;
    for (Eigen::Index x = 0; x < out_w; ++x) {
      const Eigen::Index dx = x - (t.cols() - 1);
      out(y, x) = circ(cy, (dx + cols) % cols);
    }
  }
  return out;
}

}  // namespace swipe::fft
