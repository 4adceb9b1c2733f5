#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>

namespace ctlab::detail {

namespace {

// Planning is not thread safe in FFTW; execution with fresh arrays is, as
// long as they share the planning alignment, which fftw_malloc guarantees.
std::mutex plan_mutex;

fftw_plan plan_for(std::size_t n, fftw_complex* sample) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), sample, sample, FFTW_BACKWARD, FFTW_ESTIMATE);
  cache.emplace(n, p);
  return p;
}

}  // namespace

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
  data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!data_) throw std::bad_alloc();
}

FftBuffer::~FftBuffer() { fftw_free(data_); }

void inverse_dft(FftBuffer& buf) {
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan_for(buf.size(), raw), raw, raw);
}

}  // namespace ctlab::detail
