#pragma once

#include <complex>

namespace wnls {

// Minimal complex-to-complex DFT engine. forward() computes the plain sum
// X_k = sum_j x_j e^{-2 pi i jk/N}, backward() the conjugate sum, both
// unnormalized. Instances own aligned scratch buffers, so distinct instances
// may execute concurrently; plan creation is serialized internally.
class Dft {
 public:
  explicit Dft(int n);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  int size() const { return n_; }
  void forward(const std::complex<double>* in, std::complex<double>* out);
  void backward(const std::complex<double>* in, std::complex<double>* out);

 private:
  int n_ = 0;
  void* buf_ = nullptr;   // fftw_complex[n]
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

// Per-thread engine cache keyed by transform size.
Dft& dft_for(int n);

}  // namespace wnls
