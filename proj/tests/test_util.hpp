#pragma once

#include <random>

#include "lrc/fourier.hpp"
#include "lrc/maps.hpp"

namespace lrc::testing {

// Random real trig polynomial with |c_n| <= scale / (1 + n^2).
inline FourierSeries random_series(std::mt19937& rng, int order,
                                   double scale = 1.0, bool zero_mean = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierSeries f(order);
  if (!zero_mean) f.set(0, scale * u(rng));
  for (int n = 1; n <= order; ++n) {
    const double s = scale / (1.0 + n * n);
    f.set(n, Complex(s * u(rng), s * u(rng)));
  }
  return f;
}

inline CircleMap nonlinear_map() {
  return CircleMap(2, FourierSeries::sine(1, 0.1));
}

// A second nonlinear map with a cosine component and degree 3.
inline CircleMap cubic_map() {
  return CircleMap(3, FourierSeries::sine(1, 0.08) +
                          FourierSeries::cosine(2, 0.03));
}

}  // namespace lrc::testing
