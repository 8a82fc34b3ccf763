#pragma once

#include <complex>
#include <vector>

namespace lrc::detail {

// Unnormalized DFT of length in.size(). sign < 0 uses exp(-2 pi i jk / n),
// sign > 0 uses exp(+2 pi i jk / n).
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> in,
                                      int sign);

}  // namespace lrc::detail
