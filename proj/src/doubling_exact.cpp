#include "lrc/doubling_exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrc/error.hpp"

namespace lrc {

FourierSeries exact_control(const FourierSeries& target,
                            const std::optional<FourierSeries>& odd_modes) {
  if (std::abs(target.mean()) > 1e-10)
    throw InvalidArgument("exact_control: target has mean " +
                          std::to_string(target.mean()));
  int order = 2 * target.order();
  if (odd_modes) {
    for (int m = 0; m <= odd_modes->order(); m += 2)
      if ((*odd_modes)[m] != Complex{})
        throw InvalidArgument("exact_control: odd_modes has even content");
    order = std::max(order, odd_modes->order());
  }
  FourierSeries eps(std::max(order, 1));
  for (int n = 1; n <= target.order(); ++n)
    eps.set(2 * n, (target[2 * n] - target[n]) / Complex(0.0, kTwoPi * n));
  if (odd_modes) {
    for (int m = 1; m <= odd_modes->order(); m += 2)
      eps.set(m, (*odd_modes)[m] / Complex(0.0, kPi * m));
  }
  return eps;
}

FourierSeries exact_forward(const FourierSeries& epsilon) {
  const int order = std::max(epsilon.order() / 2, 1);
  // b_m = -(2 pi i m) eps_m / 2; rho1_n = sum_{k >= 1} b_{2^k n}.
  FourierSeries out(order);
  for (int n = 1; n <= order; ++n) {
    Complex sum{};
    for (long m = 2L * n; m <= epsilon.order(); m *= 2)
      sum += -Complex(0.0, kPi * static_cast<double>(m)) *
             epsilon[static_cast<int>(m)];
    out.set(n, sum);
  }
  return out;
}

}  // namespace lrc
