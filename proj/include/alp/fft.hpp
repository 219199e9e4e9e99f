#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <span>
#include <tuple>

#include "alp/grid.hpp"

namespace alp::fft {

using cplx = std::complex<double>;

// FFTW's planner is not re-entrant.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

/// In-place 3-D complex transform pair on an owned, FFTW-aligned buffer.
/// Forward is unnormalized e^{-ikx}; backward is unnormalized e^{+ikx}.
class Plan3d {
 public:
  Plan3d(std::size_t n1, std::size_t n2, std::size_t n3) : size_(n1 * n2 * n3) {
    buffer_ = fftw_alloc_complex(size_);
    if (buffer_ == nullptr) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_3d(static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3), buffer_,
                                buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_3d(static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3), buffer_,
                                 buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  Plan3d(const Plan3d&) = delete;
  Plan3d& operator=(const Plan3d&) = delete;
  ~Plan3d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }

  std::span<cplx> buffer() { return {reinterpret_cast<cplx*>(buffer_), size_}; }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

 private:
  std::size_t size_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Per-thread plan cache keyed by shape. Callers own the buffer only until
/// the next call that touches the same shape.
inline Plan3d& plan(const Grid& g) {
  thread_local std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::unique_ptr<Plan3d>> cache;
  auto key = std::make_tuple(g.n1(), g.n2(), g.n3());
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Plan3d>(g.n1(), g.n2(), g.n3())).first;
  }
  return *it->second;
}

}  // namespace alp::fft
