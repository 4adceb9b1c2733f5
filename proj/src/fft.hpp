#pragma once

#include <complex>
#include <cstddef>

namespace ctlab::detail {

/// SIMD-aligned complex buffer for the transform library.
class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n);
  ~FftBuffer();
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  std::size_t size() const { return n_; }
  std::complex<double>* data() { return data_; }
  std::complex<double>& operator[](std::size_t k) { return data_[k]; }

 private:
  std::size_t n_;
  std::complex<double>* data_;
};

/// In place, out[j] = sum_k in[k] e^{+2 pi i j k / n}, unnormalized.
void inverse_dft(FftBuffer& buf);

}  // namespace ctlab::detail
