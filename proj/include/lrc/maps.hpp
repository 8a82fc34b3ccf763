#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lrc/error.hpp"
#include "lrc/fourier.hpp"

namespace lrc {

inline constexpr double kPreimageTol = 1e-13;
inline constexpr int kPreimageMaxIter = 100;
inline constexpr double kExpansivityMargin = 0.05;
inline constexpr std::size_t kExpansivityGrid = 4096;

// Wraps x into [0, 1).
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Shortest signed distance between two points of the circle R/Z.
inline double circle_distance(double a, double b) {
  double d = wrap_unit(a - b);
  return d > 0.5 ? d - 1.0 : d;
}

// Solves fn(y) = target for increasing fn on [lo, hi] with
// fn(lo) <= target <= fn(hi). Newton steps from `seed`; any step that
// leaves the current bracket is replaced by bisection. Throws
// ConvergenceError when |fn(y) - target| >= tol after max_iter steps.
template <typename F, typename DF>
double solve_monotone(F&& fn, DF&& dfn, double target, double lo, double hi,
                      double seed, double tol = kPreimageTol,
                      int max_iter = kPreimageMaxIter) {
  double y = (seed > lo && seed < hi) ? seed : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double r = fn(y) - target;
    if (std::abs(r) < tol) return y;
    if (r > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    const double slope = dfn(y);
    double next = slope > 0.0 ? y - r / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) break;
    y = next;
  }
  const double r = fn(y) - target;
  if (std::abs(r) < tol) return y;
  throw ConvergenceError("solve_monotone: no convergence (residual " +
                         std::to_string(r) + ")");
}

// Degree-d expanding circle map given by its lift L(x) = d x + p(x) with a
// trigonometric-polynomial periodic part p.
class CircleMap {
 public:
  // Throws InvalidArgument if degree < 2 or min (d + p') <= 1 + 1e-9.
  CircleMap(int degree, FourierSeries periodic_part);

  static CircleMap linear(int degree) {
    return CircleMap(degree, FourierSeries(0));
  }

  int degree() const { return degree_; }
  const FourierSeries& periodic_part() const { return p_; }

  double lift(double x) const { return degree_ * x + p_.evaluate(x); }
  // Order 0 returns L(x) mod 1; orders 1..3 return T', T'', T'''.
  double eval(double x, int deriv_order = 0) const;
  double derivative(double x) const { return eval(x, 1); }

  // Minimum of T' over the expansivity grid.
  double min_derivative() const { return min_derivative_; }

  // Solves L(y) = t (lift-level inverse; y is not wrapped).
  double lift_inverse(double t) const;
  // The d points y_1 < ... < y_d in [0, 1) with T(y_i) = x mod 1.
  std::vector<double> preimages(double x) const;

 private:
  int degree_;
  FourierSeries p_;
  FourierSeries dp_;
  FourierSeries d2p_;
  FourierSeries d3p_;
  double p_bound_;
  double min_derivative_;
};

// One-parameter family T_delta = T_0 + delta * epsilon.
class PerturbedFamily {
 public:
  PerturbedFamily(CircleMap base, FourierSeries direction);

  const CircleMap& base() const { return base_; }
  const FourierSeries& direction() const { return direction_; }

  // (min T_0' - 1 - margin) / max |epsilon'|; infinite when epsilon' == 0.
  double delta_max() const { return delta_max_; }

  // Throws InvalidArgument when |delta| >= delta_max.
  CircleMap member(double delta) const;

  // First-order prediction y_i^0 - delta * epsilon(y_i^0) / T_0'(y_i^0) for
  // the preimage of x on branch i (the i-th entry of base().preimages(x)).
  double preimage_shift(double x, int branch, double delta) const;

 private:
  CircleMap base_;
  FourierSeries direction_;
  double delta_max_;
};

}  // namespace lrc
