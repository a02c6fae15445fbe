#include "tomo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>

#include "tomo/common.hpp"

namespace tomo::fft {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(const std::vector<int>& shape, int sign) {
  static std::map<std::pair<std::vector<int>, int>, fftw_plan> cache;
  std::lock_guard lock(plan_mutex);
  auto it = cache.find({shape, sign});
  if (it != cache.end()) return it->second;
  // Plan on a scratch buffer with FFTW_UNALIGNED so the plan applies to any
  // caller array via the new-array interface.
  std::size_t total = 1;
  for (int n : shape) total *= static_cast<std::size_t>(n);
  std::vector<std::complex<double>> scratch(total);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft(static_cast<int>(shape.size()),
                                 shape.data(), ptr, ptr, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw NumericalError("fftw: planning failed");
  cache.emplace(std::make_pair(shape, sign), plan);
  return plan;
}

}  // namespace

void transform(std::span<const int> shape, std::complex<double>* data, int sign) {
  const std::vector<int> s(shape.begin(), shape.end());
  fftw_plan plan = plan_for(s, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, ptr, ptr);
}

void forward(std::span<const int> shape, std::complex<double>* data) {
  transform(shape, data, FFTW_FORWARD);
}

void inverse(std::span<const int> shape, std::complex<double>* data) {
  transform(shape, data, FFTW_BACKWARD);
  std::size_t total = 1;
  for (int n : shape) total *= static_cast<std::size_t>(n);
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

std::vector<double> frequencies(int count, double spacing) {
  std::vector<double> f(static_cast<std::size_t>(count));
  const double step = 2.0 * M_PI / (count * spacing);
  for (int k = 0; k < count; ++k) {
    const int signed_k = k <= count / 2 ? k : k - count;
    f[static_cast<std::size_t>(k)] = step * signed_k;
  }
  return f;
}

}  // namespace tomo::fft
