#include "fft.hpp"

#include <cstring>
#include <mutex>

namespace cll {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  buf_in_ = fftw_alloc_complex(n);
  buf_out_ = fftw_alloc_complex(n);
  fwd_ = fftw_plan_dft_1d(n, buf_in_, buf_out_, FFTW_FORWARD, FFTW_ESTIMATE);
  inv_ = fftw_plan_dft_1d(n, buf_in_, buf_out_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(inv_);
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) {
  for (int k = 0; k < n_; ++k) {
    buf_in_[k][0] = in[k].real();
    buf_in_[k][1] = in[k].imag();
  }
  fftw_execute(fwd_);
  for (int k = 0; k < n_; ++k)
    out[k] = std::complex<double>(buf_out_[k][0], buf_out_[k][1]);
}

void Fft::inverse(const std::complex<double>* in, std::complex<double>* out) {
  for (int k = 0; k < n_; ++k) {
    buf_in_[k][0] = in[k].real();
    buf_in_[k][1] = in[k].imag();
  }
  fftw_execute(inv_);
  const double s = 1.0 / n_;
  for (int k = 0; k < n_; ++k)
    out[k] = std::complex<double>(buf_out_[k][0] * s, buf_out_[k][1] * s);
}

}  // namespace cll
