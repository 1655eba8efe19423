#include "wnls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace wnls {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("Dft: size must be positive");
  buf_ = fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n));
  if (!buf_) throw std::bad_alloc();
  auto* b = static_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Dft: planning failed");
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  if (buf_) fftw_free(buf_);
}

void Dft::forward(const std::complex<double>* in, std::complex<double>* out) {
  auto* b = static_cast<fftw_complex*>(buf_);
  std::memcpy(b, in, sizeof(fftw_complex) * static_cast<size_t>(n_));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, b, sizeof(fftw_complex) * static_cast<size_t>(n_));
}

void Dft::backward(const std::complex<double>* in, std::complex<double>* out) {
  auto* b = static_cast<fftw_complex*>(buf_);
  std::memcpy(b, in, sizeof(fftw_complex) * static_cast<size_t>(n_));
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, b, sizeof(fftw_complex) * static_cast<size_t>(n_));
}

Dft& dft_for(int n) {
  thread_local std::map<int, std::unique_ptr<Dft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<Dft>(n)).first;
  }
  return *it->second;
}

}  // namespace wnls
