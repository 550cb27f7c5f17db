#pragma once

#include <complex>
#include <vector>

#include <fftw3.h>

namespace cll {

// Minimal RAII wrapper for 1-D complex FFTW transforms of a fixed size.
// Forward is unnormalized; inverse divides by n.
class Fft {
public:
  explicit Fft(int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(const std::complex<double>* in, std::complex<double>* out);
  void inverse(const std::complex<double>* in, std::complex<double>* out);
  int size() const { return n_; }

private:
  int n_;
  fftw_complex* buf_in_;
  fftw_complex* buf_out_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

}  // namespace cll
