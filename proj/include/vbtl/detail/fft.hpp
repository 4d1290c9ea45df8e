#pragma once

// Thin RAII layer over FFTW for the 1D/2D complex transforms used by the grid module.
// Plans are created with FFTW_ESTIMATE so results do not depend on timing measurements.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>

namespace vbtl::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int dim, std::size_t n, int sign) : size_(dim == 1 ? n : n * n) {
    buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    std::lock_guard lock(fftw_planner_mutex());
    const int ni = static_cast<int>(n);
    plan_ = dim == 1 ? fftw_plan_dft_1d(ni, buffer_, buffer_, sign, FFTW_ESTIMATE)
                     : fftw_plan_dft_2d(ni, ni, buffer_, buffer_, sign, FFTW_ESTIMATE);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buffer_);
  }

  // In-place on `data`, which must hold exactly size() values.
  void execute(std::span<std::complex<double>> data) const {
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer_);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(plan_);
    std::copy(raw, raw + size_, data.begin());
  }

  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
};

// One plan per (dim, n, sign) and thread; the buffer makes a plan non-reentrant.
inline const FftPlan& cached_plan(int dim, std::size_t n, int sign) {
  thread_local std::map<std::tuple<int, std::size_t, int>, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[{dim, n, sign}];
  if (!slot) slot = std::make_unique<FftPlan>(dim, n, sign);
  return *slot;
}

}  // namespace vbtl::detail
