#include "lrc/response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrc/error.hpp"

namespace lrc {

namespace {

constexpr double kDensityResidualTol = 1e-9;
constexpr double kMeanTol = 1e-10;

}  // namespace

ResponseProblem ResponseProblem::create(const CircleMap& map, int order) {
  return ResponseProblem(map, invariant_density(map, order), order);
}

ResponseProblem::ResponseProblem(CircleMap map, FourierSeries density,
                                 int order)
    : map_(std::move(map)), density_(density.resized(order)), order_(order) {
  if (order < 1) throw InvalidArgument("ResponseProblem: order must be >= 1");
  sampler_ = std::make_shared<const TransferSampler>(
      map_, transfer_grid_size(order));
  const GridFunction lrho = sampler_->apply(density_);
  double res = 0.0;
  for (std::size_t j = 0; j < lrho.size(); ++j)
    res = std::max(res, std::abs(lrho.samples[j] -
                                 density_.evaluate(lrho.point(j))));
  if (res > kDensityResidualTol)
    throw VerificationError(
        "ResponseProblem: density is not invariant (|L rho - rho| = " +
            std::to_string(res) + ")",
        res);
  solver_ =
      std::make_shared<const ZeroMeanSolver>(galerkin_matrix(map_, order));
}

FourierSeries derivative_operator(const ResponseProblem& problem,
                                  const FourierSeries& epsilon,
                                  const FourierSeries& w) {
  const CircleMap& map = problem.map();
  const int padded = std::max(problem.padded_order(),
                              2 * (epsilon.order() + w.order()));
  const GridFunction product = sample(
      [&](double x) {
        return epsilon.evaluate(x) * w.evaluate(x) / map.derivative(x);
      },
      grid_size_for(padded));
  const FourierSeries integrand = differentiate(dft(product, padded), 1);
  return -problem.sampler().apply_series(integrand, problem.order());
}

FourierSeries derivative_operator_three_term(const ResponseProblem& problem,
                                             const FourierSeries& epsilon,
                                             const FourierSeries& w) {
  const CircleMap& map = problem.map();
  const GridFunction lw = problem.sampler().apply([&](double y) {
    const double slope = map.derivative(y);
    const double e = epsilon.evaluate(y);
    const double wy = w.evaluate(y);
    return -wy * epsilon.evaluate(y, 1) / slope -
           e * w.evaluate(y, 1) / slope +
           e * map.eval(y, 2) * wy / (slope * slope);
  });
  return dft(lw, problem.order());
}

FourierSeries forward_response(const ResponseProblem& problem,
                               const FourierSeries& epsilon) {
  FourierSeries rhs = derivative_operator(problem, epsilon, problem.density());
  if (std::abs(rhs[0]) > kMeanTol)
    throw VerificationError("forward_response: derivative term has mean " +
                                std::to_string(rhs.mean()),
                            std::abs(rhs.mean()));
  rhs.set(0, 0.0);
  return problem.solver().solve(rhs);
}

double finite_difference_response_check(const ResponseProblem& problem,
                                        const FourierSeries& epsilon,
                                        double delta) {
  const PerturbedFamily family(problem.map(), epsilon);
  const int n = problem.order();
  const FourierSeries plus = invariant_density(family.member(delta), n);
  const FourierSeries minus = invariant_density(family.member(-delta), n);
  const FourierSeries fd = (plus - minus) * (0.5 / delta);
  return l1_norm(fd - forward_response(problem, epsilon));
}

double l1_norm(const FourierSeries& f, std::size_t grid_size) {
  const GridFunction s =
      idft(f, std::max(next_power_of_two(grid_size), grid_size_for(f.order())));
  double total = 0.0;
  for (double v : s.samples) total += std::abs(v);
  return total / static_cast<double>(s.size());
}

}  // namespace lrc
