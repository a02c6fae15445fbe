#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tomo::fft {

/// In-place complex DFT over an nd row-major array (1, 2 or 3 axes).
/// sign = -1 forward, +1 backward. Backward is unnormalized (FFTW
/// convention); callers divide by the total size. Plans are cached; plan
/// creation is serialized internally so calls are thread-safe as long as
/// the data buffers are distinct.
void transform(std::span<const int> shape, std::complex<double>* data, int sign);

void forward(std::span<const int> shape, std::complex<double>* data);

/// Backward transform including the 1/N normalization.
void inverse(std::span<const int> shape, std::complex<double>* data);

/// Angular frequencies 2*pi*k/(count*spacing) for the DFT bin layout
/// (k = 0..count/2, then negative).
std::vector<double> frequencies(int count, double spacing);

}  // namespace tomo::fft
