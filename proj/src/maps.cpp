#include "lrc/maps.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace lrc {

CircleMap::CircleMap(int degree, FourierSeries periodic_part)
    : degree_(degree), p_(std::move(periodic_part)) {
  if (degree < 2) throw InvalidArgument("CircleMap: degree must be >= 2");
  if (p_.order() > 0) {
    dp_ = differentiate(p_, 1);
    d2p_ = differentiate(p_, 2);
    d3p_ = differentiate(p_, 3);
  } else {
    dp_ = d2p_ = d3p_ = FourierSeries(0);
  }
  p_bound_ = 0.0;
  for (const Complex& c : p_.coefficients()) p_bound_ += std::abs(c);

  min_derivative_ = std::numeric_limits<double>::infinity();
  const std::size_t m = std::max(kExpansivityGrid, grid_size_for(dp_.order()));
  const GridFunction slope = idft(dp_, next_power_of_two(m));
  for (double s : slope.samples)
    min_derivative_ = std::min(min_derivative_, degree_ + s);
  if (!(min_derivative_ > 1.0 + 1e-9))
    throw InvalidArgument("CircleMap: not expanding (min T' = " +
                          std::to_string(min_derivative_) + ")");
}

double CircleMap::eval(double x, int deriv_order) const {
  switch (deriv_order) {
    case 0:
      return wrap_unit(lift(x));
    case 1:
      return degree_ + dp_.evaluate(x);
    case 2:
      return d2p_.evaluate(x);
    case 3:
      return d3p_.evaluate(x);
    default:
      throw InvalidArgument("CircleMap::eval: derivative order must be 0..3");
  }
}

double CircleMap::lift_inverse(double t) const {
  const double pad = p_bound_ + 1e-12;
  const double lo = (t - pad) / degree_;
  const double hi = (t + pad) / degree_;
  return solve_monotone([this](double y) { return lift(y); },
                        [this](double y) { return derivative(y); }, t, lo, hi,
                        t / degree_);
}

std::vector<double> CircleMap::preimages(double x) const {
  x = wrap_unit(x);
  const double base = p_.evaluate(0.0);
  const double first = std::ceil(base - x);
  std::vector<double> ys(static_cast<std::size_t>(degree_));
  for (int i = 0; i < degree_; ++i) {
    double y = lift_inverse(x + first + i);
    if (y < 0.0) y = 0.0;
    ys[static_cast<std::size_t>(i)] = y >= 1.0 ? wrap_unit(y) : y;
  }
  std::sort(ys.begin(), ys.end());
  return ys;
}

PerturbedFamily::PerturbedFamily(CircleMap base, FourierSeries direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  double slope_max = 0.0;
  if (direction_.order() > 0) {
    const std::size_t m =
        std::max(kExpansivityGrid, grid_size_for(direction_.order()));
    const GridFunction s =
        idft(differentiate(direction_, 1), next_power_of_two(m));
    for (double v : s.samples) slope_max = std::max(slope_max, std::abs(v));
  }
  const double room = base_.min_derivative() - 1.0 - kExpansivityMargin;
  delta_max_ = slope_max > 0.0 ? std::max(0.0, room) / slope_max
                               : std::numeric_limits<double>::infinity();
}

CircleMap PerturbedFamily::member(double delta) const {
  if (!(std::abs(delta) < delta_max_))
    throw InvalidArgument("PerturbedFamily::member: |delta| = " +
                          std::to_string(std::abs(delta)) +
                          " breaks expansivity (delta_max = " +
                          std::to_string(delta_max_) + ")");
  return CircleMap(base_.degree(),
                   base_.periodic_part() + direction_ * delta);
}

double PerturbedFamily::preimage_shift(double x, int branch,
                                       double delta) const {
  const auto ys = base_.preimages(x);
  if (branch < 0 || branch >= static_cast<int>(ys.size()))
    throw InvalidArgument("preimage_shift: branch out of range");
  const double y0 = ys[static_cast<std::size_t>(branch)];
  return y0 - delta * direction_.evaluate(y0) / base_.derivative(y0);
}

}  // namespace lrc
