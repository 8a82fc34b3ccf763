#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace lrc::detail {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are made once per (size, sign) and kept for the process.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<std::complex<double>> in(n), out(n);
  fftw_plan p = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
      reinterpret_cast<fftw_complex*>(out.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, p);
  return p;
}

}  // namespace

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> in,
                                      int sign) {
  std::vector<std::complex<double>> out(in.size());
  fftw_execute_dft(plan_for(in.size(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD),
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace lrc::detail
