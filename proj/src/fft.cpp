#include "ueq/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ueq::grid {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not thread-safe; executing an existing plan on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Buffer {
  explicit Buffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* data;
};

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Buffer a(static_cast<std::size_t>(n));
  Buffer b(static_cast<std::size_t>(n));
  PlanPair p;
  p.forward = fftw_plan_dft_1d(n, a.data, b.data, FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_1d(n, b.data, a.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (p.forward == nullptr || p.backward == nullptr) throw std::runtime_error("fftw: planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<cx> spectral_multipliers(int points, double half_width, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("spectral derivative order must be 1 or 2");
  std::vector<cx> m(static_cast<std::size_t>(points));
  const double dk = std::numbers::pi / half_width;
  for (int j = 0; j < points; ++j) {
    const int mode = j < points / 2 ? j : j - points;
    const double k = dk * mode;
    cx f = order == 1 ? cx(0.0, k) : cx(-k * k, 0.0);
    // The Nyquist mode has no odd real derivative; drop it for first derivatives.
    if (order == 1 && points % 2 == 0 && j == points / 2) f = 0.0;
    m[static_cast<std::size_t>(j)] = f / static_cast<double>(points);
  }
  return m;
}

void apply_along_axis(std::span<cx> data, const GridSpec& grid, int axis, std::span<const cx> multipliers) {
  const int n = grid.points;
  if (multipliers.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("multiplier length mismatch");
  const PlanPair& p = plans_for(n);
  Buffer in(static_cast<std::size_t>(n));
  Buffer out(static_cast<std::size_t>(n));
  const std::size_t stride = grid.stride(axis);
  const std::size_t block = stride * static_cast<std::size_t>(n);
  const std::size_t total = data.size();
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t inner_off = 0; inner_off < stride; ++inner_off) {
      const std::size_t start = base + inner_off;
      for (int i = 0; i < n; ++i) {
        const cx z = data[start + static_cast<std::size_t>(i) * stride];
        in.data[i][0] = z.real();
        in.data[i][1] = z.imag();
      }
      fftw_execute_dft(p.forward, in.data, out.data);
      for (int j = 0; j < n; ++j) {
        const cx z = cx(out.data[j][0], out.data[j][1]) * multipliers[static_cast<std::size_t>(j)];
        out.data[j][0] = z.real();
        out.data[j][1] = z.imag();
      }
      fftw_execute_dft(p.backward, out.data, in.data);
      for (int i = 0; i < n; ++i) {
        data[start + static_cast<std::size_t>(i) * stride] = cx(in.data[i][0], in.data[i][1]);
      }
    }
  }
}

}  // namespace ueq::grid
