#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lrc/fourier.hpp"
#include "lrc/response.hpp"

namespace lrc {

enum class ControlMethod { kTwoStep, kMinimalNorm };

std::string to_string(ControlMethod method);
ControlMethod control_method_from_string(const std::string& name);

struct ControlSolution {
  FourierSeries epsilon;
  double residual = 0.0;  // |A eps - r|_2 on the truncated coefficients
  double norm = 0.0;      // |eps|_abcd
  ControlMethod method = ControlMethod::kTwoStep;
};

// Step 1: g with L_0 g = f, f = (I - L_0) rho1, built as
// g = (f o T_0) rho / (rho o T_0). Requires |mean(rho1)| < 1e-10.
// Throws VerificationError when |L_0 g - f|_inf >= 1e-9 or |mean g| >= 1e-10.
FourierSeries step1_g(const ResponseProblem& problem,
                      const FourierSeries& target);

// Step 2: the mean-zero epsilon with (epsilon rho / T_0')' = -g, i.e.
// epsilon = (T_0' / rho)(C - G) for G the antiderivative of g.
// Throws VerificationError when the pointwise ODE residual is >= 1e-9.
FourierSeries step2_epsilon(const ResponseProblem& problem,
                            const FourierSeries& g);

// Two-step particular solution, checked end to end against forward_response.
ControlSolution solve_control(const ResponseProblem& problem,
                              const FourierSeries& target,
                              const SobolevWeights& weights = {});

// The truncated linear map A: eps -> derivative_operator(eps, rho) in the
// real basis {1, cos 2 pi m x, sin 2 pi m x}_{m=1..N}, with outputs scaled so
// that Euclidean norms equal L2 norms.
class ControlOperator {
 public:
  explicit ControlOperator(const ResponseProblem& problem);

  int order() const { return order_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  Eigen::VectorXd to_output(const FourierSeries& f) const;
  Eigen::VectorXd to_input(const FourierSeries& f) const;
  FourierSeries from_input(const Eigen::VectorXd& v) const;
  // Squared W-norm of each real basis function.
  Eigen::VectorXd basis_weights(const SobolevWeights& w) const;

 private:
  int order_;
  Eigen::MatrixXd matrix_;
};

inline constexpr double kPseudoinverseCutoff = 1e-10;
inline constexpr double kFeasibilityTol = 1e-8;

// Minimal |.|_W solution of A eps = (I - L_0) rho1 through the truncated SVD
// of A W^{-1/2}. Throws InfeasibleError when the constraint residual is
// above 1e-8.
ControlSolution minimal_norm_control(const ResponseProblem& problem,
                                     const FourierSeries& target,
                                     const SobolevWeights& weights);
ControlSolution minimal_norm_control(const ControlOperator& op,
                                     const ResponseProblem& problem,
                                     const FourierSeries& target,
                                     const SobolevWeights& weights);

struct KernelDirections {
  std::vector<FourierSeries> directions;  // W-orthonormal
  bool complete = true;                   // false if fewer than requested
};

// Right singular vectors of A W^{-1/2} below the pseudoinverse cutoff,
// mapped back to W-unit perturbations.
KernelDirections kernel_directions(const ResponseProblem& problem, int count,
                                   const SobolevWeights& weights);
KernelDirections kernel_directions(const ControlOperator& op, int count,
                                   const SobolevWeights& weights);

// Minimal norms at truncation N and 2N, for judging truncation convergence.
struct NormConvergence {
  double norm_n = 0.0;
  double norm_2n = 0.0;
  double difference = 0.0;
};
NormConvergence minimal_norm_convergence(const CircleMap& map,
                                         const FourierSeries& target,
                                         const SobolevWeights& weights,
                                         int order);

}  // namespace lrc
