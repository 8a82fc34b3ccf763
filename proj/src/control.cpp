#include "lrc/control.hpp"

#include <algorithm>
#include <cmath>

#include "lrc/error.hpp"

namespace lrc {

namespace {

constexpr double kMeanTol = 1e-10;
constexpr double kStepTol = 1e-9;
constexpr double kRoundTripTol = 1e-6;
constexpr std::size_t kCheckGrid = 1024;

void require_zero_mean(const FourierSeries& f, const char* who) {
  if (std::abs(f.mean()) > kMeanTol)
    throw InvalidArgument(std::string(who) + ": target has mean " +
                          std::to_string(f.mean()) +
                          "; density perturbations must integrate to zero");
}

// (I - L_0) rho1 projected on the problem's modes.
FourierSeries constraint_rhs(const ResponseProblem& problem,
                             const FourierSeries& target) {
  const FourierSeries t = target.resized(problem.order());
  FourierSeries f = t - problem.galerkin().apply(t);
  f.set(0, 0.0);
  return f;
}

double l2_norm(const FourierSeries& f) {
  return sobolev_norm(f, SobolevWeights{});
}

}  // namespace

std::string to_string(ControlMethod method) {
  return method == ControlMethod::kTwoStep ? "two_step" : "minimal_norm";
}

ControlMethod control_method_from_string(const std::string& name) {
  if (name == "two_step") return ControlMethod::kTwoStep;
  if (name == "minimal_norm") return ControlMethod::kMinimalNorm;
  throw InvalidArgument("unknown control method '" + name + "'");
}

// ---------------------------------------------------------------------------
// Two-step scheme

FourierSeries step1_g(const ResponseProblem& problem,
                      const FourierSeries& target) {
  require_zero_mean(target, "step1_g");
  if (target.order() > problem.order())
    throw InvalidArgument("step1_g: target order exceeds truncation order");
  const CircleMap& map = problem.map();
  const FourierSeries& rho = problem.density();
  const FourierSeries f = constraint_rhs(problem, target);

  const int padded = problem.padded_order();
  const GridFunction samples = sample(
      [&](double x) {
        const double tx = map.eval(x, 0);
        return f.evaluate(tx) * rho.evaluate(x) / rho.evaluate(tx);
      },
      grid_size_for(padded));
  FourierSeries g = dft(samples, padded);

  if (std::abs(g.mean()) > kMeanTol)
    throw VerificationError("step1_g: g does not integrate to zero",
                            std::abs(g.mean()));
  g.set(0, 0.0);

  const GridFunction lg = problem.sampler().apply(g);
  double res = 0.0;
  for (std::size_t j = 0; j < lg.size(); ++j)
    res = std::max(res, std::abs(lg.samples[j] - f.evaluate(lg.point(j))));
  if (res > kStepTol)
    throw VerificationError("step1_g: |L g - f| too large; raise the order",
                            res);
  return g;
}

FourierSeries step2_epsilon(const ResponseProblem& problem,
                            const FourierSeries& g) {
  if (std::abs(g.mean()) > kMeanTol)
    throw InvalidArgument("step2_epsilon: g has mean " +
                          std::to_string(g.mean()) +
                          "; the periodic solution requires zero mean");
  FourierSeries g0 = g;
  g0.set(0, 0.0);
  const FourierSeries big_g = antiderivative(g0);
  const CircleMap& map = problem.map();
  const FourierSeries& rho = problem.density();

  const std::size_t m =
      std::max(grid_size_for(problem.padded_order()), grid_size_for(g.order()));
  const GridFunction factor =
      sample([&](double x) { return map.derivative(x) / rho.evaluate(x); }, m);
  const GridFunction gg = idft(big_g, m);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    num += factor.samples[j] * gg.samples[j];
    den += factor.samples[j];
  }
  const double c = num / den;
  std::vector<double> eps(m);
  for (std::size_t j = 0; j < m; ++j)
    eps[j] = factor.samples[j] * (c - gg.samples[j]);
  FourierSeries epsilon = dft(GridFunction(std::move(eps)), problem.order());

  double res = 0.0;
  for (std::size_t j = 0; j < kCheckGrid; ++j) {
    const double x = static_cast<double>(j) / kCheckGrid;
    const double slope = map.derivative(x);
    const double e = epsilon.evaluate(x);
    const double r = rho.evaluate(x);
    const double lhs = -epsilon.evaluate(x, 1) * r / slope -
                       e * rho.evaluate(x, 1) / slope +
                       e * r * map.eval(x, 2) / (slope * slope);
    res = std::max(res, std::abs(lhs - g.evaluate(x)));
  }
  if (res > kStepTol)
    throw VerificationError(
        "step2_epsilon: ODE residual too large; raise the order", res);
  return epsilon;
}

ControlSolution solve_control(const ResponseProblem& problem,
                              const FourierSeries& target,
                              const SobolevWeights& weights) {
  ControlSolution sol;
  sol.method = ControlMethod::kTwoStep;
  sol.epsilon = step2_epsilon(problem, step1_g(problem, target));
  sol.residual =
      l2_norm(derivative_operator(problem, sol.epsilon, problem.density()) -
              constraint_rhs(problem, target));
  sol.norm = sobolev_norm(sol.epsilon, weights);

  const double round_trip =
      sup_norm(forward_response(problem, sol.epsilon) - target);
  if (round_trip > kRoundTripTol)
    throw VerificationError(
        "solve_control: forward response misses the target", round_trip);
  return sol;
}

// ---------------------------------------------------------------------------
// Truncated constraint operator

ControlOperator::ControlOperator(const ResponseProblem& problem)
    : order_(problem.order()),
      matrix_(2 * problem.order() + 1, 2 * problem.order() + 1) {
  const int dim = 2 * order_ + 1;
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(k) = 1.0;
    matrix_.col(k) = to_output(
        derivative_operator(problem, from_input(e), problem.density()));
  }
}

Eigen::VectorXd ControlOperator::to_output(const FourierSeries& f) const {
  Eigen::VectorXd v(2 * order_ + 1);
  v(0) = f[0].real();
  for (int m = 1; m <= order_; ++m) {
    v(2 * m - 1) = std::sqrt(2.0) * f[m].real();
    v(2 * m) = std::sqrt(2.0) * f[m].imag();
  }
  return v;
}

Eigen::VectorXd ControlOperator::to_input(const FourierSeries& f) const {
  Eigen::VectorXd v(2 * order_ + 1);
  v(0) = f[0].real();
  for (int m = 1; m <= order_; ++m) {
    v(2 * m - 1) = 2.0 * f[m].real();
    v(2 * m) = -2.0 * f[m].imag();
  }
  return v;
}

FourierSeries ControlOperator::from_input(const Eigen::VectorXd& v) const {
  FourierSeries f(order_);
  f.set(0, v(0));
  for (int m = 1; m <= order_; ++m)
    f.set(m, Complex(0.5 * v(2 * m - 1), -0.5 * v(2 * m)));
  return f;
}

Eigen::VectorXd ControlOperator::basis_weights(const SobolevWeights& w) const {
  Eigen::VectorXd out(2 * order_ + 1);
  out(0) = w.weight(0);
  for (int m = 1; m <= order_; ++m) out(2 * m - 1) = out(2 * m) = 0.5 * w.weight(m);
  return out;
}

namespace {

struct WeightedSvd {
  Eigen::VectorXd scale;  // W^{-1/2}
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  double cutoff;
};

WeightedSvd weighted_svd(const ControlOperator& op, const SobolevWeights& w) {
  WeightedSvd out;
  out.scale = op.basis_weights(w).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd b = op.matrix() * out.scale.asDiagonal();
  out.svd.compute(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = out.svd.singularValues();
  out.cutoff = kPseudoinverseCutoff * (s.size() > 0 ? s(0) : 0.0);
  return out;
}

}  // namespace

ControlSolution minimal_norm_control(const ControlOperator& op,
                                     const ResponseProblem& problem,
                                     const FourierSeries& target,
                                     const SobolevWeights& weights) {
  weights.validate(true);
  require_zero_mean(target, "minimal_norm_control");
  if (target.order() > problem.order())
    throw InvalidArgument(
        "minimal_norm_control: target order exceeds truncation order");
  const Eigen::VectorXd r = op.to_output(constraint_rhs(problem, target));
  const WeightedSvd ws = weighted_svd(op, weights);
  const auto& s = ws.svd.singularValues();
  const Eigen::MatrixXd& u = ws.svd.matrixU();
  const Eigen::MatrixXd& v = ws.svd.matrixV();

  Eigen::VectorXd y = Eigen::VectorXd::Zero(v.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= ws.cutoff) break;
    y += v.col(i) * (u.col(i).dot(r) / s(i));
  }
  const Eigen::VectorXd coeffs = ws.scale.cwiseProduct(y);

  ControlSolution sol;
  sol.method = ControlMethod::kMinimalNorm;
  sol.epsilon = op.from_input(coeffs);
  sol.residual = (op.matrix() * coeffs - r).norm();
  sol.norm = sobolev_norm(sol.epsilon, weights);
  if (sol.residual > kFeasibilityTol)
    throw InfeasibleError(
        "minimal_norm_control: target not realizable at order " +
            std::to_string(problem.order()) + "; try a larger order",
        sol.residual);
  return sol;
}

ControlSolution minimal_norm_control(const ResponseProblem& problem,
                                     const FourierSeries& target,
                                     const SobolevWeights& weights) {
  return minimal_norm_control(ControlOperator(problem), problem, target,
                              weights);
}

KernelDirections kernel_directions(const ControlOperator& op, int count,
                                   const SobolevWeights& weights) {
  weights.validate();
  const WeightedSvd ws = weighted_svd(op, weights);
  const auto& s = ws.svd.singularValues();
  const Eigen::MatrixXd& v = ws.svd.matrixV();
  KernelDirections out;
  for (Eigen::Index i = s.size() - 1; i >= 0; --i) {
    if (static_cast<int>(out.directions.size()) >= count) break;
    if (s(i) > ws.cutoff) break;
    out.directions.push_back(op.from_input(ws.scale.cwiseProduct(v.col(i))));
  }
  out.complete = static_cast<int>(out.directions.size()) == count;
  return out;
}

KernelDirections kernel_directions(const ResponseProblem& problem, int count,
                                   const SobolevWeights& weights) {
  return kernel_directions(ControlOperator(problem), count, weights);
}

NormConvergence minimal_norm_convergence(const CircleMap& map,
                                         const FourierSeries& target,
                                         const SobolevWeights& weights,
                                         int order) {
  NormConvergence out;
  out.norm_n = minimal_norm_control(ResponseProblem::create(map, order), target,
                                    weights)
                   .norm;
  out.norm_2n = minimal_norm_control(ResponseProblem::create(map, 2 * order),
                                     target, weights)
                    .norm;
  out.difference = std::abs(out.norm_2n - out.norm_n);
  return out;
}

}  // namespace lrc
