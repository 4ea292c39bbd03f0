#pragma once

#include <complex>
#include <vector>

namespace mihd::fft {

/// In-place 3D c2c transforms on n^3 row-major data, FFTW sign conventions.
/// forward applies e^{-2 pi i k.x} summation (unscaled); backward e^{+}.
/// Plans are cached per grid size and reused; execution is thread-safe.
void forward(int n, std::complex<double>* data);
void backward(int n, std::complex<double>* data);

} // namespace mihd::fft
