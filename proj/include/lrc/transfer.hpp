#pragma once

#include <Eigen/Dense>
#include <concepts>
#include <cstddef>
#include <vector>

#include "lrc/fourier.hpp"
#include "lrc/maps.hpp"

namespace lrc {

// Preimages and inverse slopes of a map at the nodes j/M of a uniform grid,
// so (Lw)(x_j) = sum_i w(y_ji) / T'(y_ji) can be evaluated for many w.
class TransferSampler {
 public:
  TransferSampler(const CircleMap& map, std::size_t grid_size);

  std::size_t grid_size() const { return grid_size_; }
  int degree() const { return degree_; }
  double preimage(std::size_t node, int branch) const {
    return preimages_[node * degree_ + branch];
  }
  double inverse_slope(std::size_t node, int branch) const {
    return inverse_slopes_[node * degree_ + branch];
  }

  // Pointwise transfer of a callable density w(y).
  template <typename F>
    requires std::invocable<F, double>
  GridFunction apply(F&& w) const {
    std::vector<double> out(grid_size_, 0.0);
    for (std::size_t j = 0; j < grid_size_; ++j) {
      double s = 0.0;
      for (int i = 0; i < degree_; ++i)
        s += w(preimage(j, i)) * inverse_slope(j, i);
      out[j] = s;
    }
    return GridFunction(std::move(out));
  }

  GridFunction apply(const FourierSeries& w) const;
  // Transfer of w projected back to a series of the given order.
  FourierSeries apply_series(const FourierSeries& w, int out_order) const;

 private:
  std::size_t grid_size_;
  int degree_;
  std::vector<double> preimages_;
  std::vector<double> inverse_slopes_;
};

// Sampling grid used when a transferred series is projected back to
// `order` modes.
std::size_t transfer_grid_size(int order);

// Pointwise transfer at the grid nodes. The samples of w are read as their
// trigonometric interpolant.
GridFunction apply_transfer(const CircleMap& map, const GridFunction& w);
// Sample, transfer, re-project. out_order < 0 keeps w's order.
FourierSeries apply_transfer(const CircleMap& map, const FourierSeries& w,
                             int out_order = -1);

// Galerkin matrix of the transfer operator in the Fourier basis,
//   M[j][k] = int_0^1 exp(2 pi i k x) exp(-2 pi i j T(x)) dx,
// indexed by modes j, k in -N..N.
class TransferMatrix {
 public:
  TransferMatrix(int order, Eigen::MatrixXcd entries);

  int order() const { return order_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex entry(int j, int k) const { return entries_(j + order_, k + order_); }

  // Input is truncated or zero-padded to the matrix order.
  FourierSeries apply(const FourierSeries& w) const;

 private:
  int order_;
  Eigen::MatrixXcd entries_;
};

// Trapezoidal quadrature on a power-of-two grid with at least 8N points.
TransferMatrix galerkin_matrix(const CircleMap& map, int order);

struct DensityReport {
  FourierSeries density;
  int iterations = 0;
  double galerkin_residual = 0.0;   // |M rho - rho|_inf on coefficients
  double pointwise_residual = 0.0;  // |L rho - rho|_inf on a grid
  double min_value = 0.0;           // min rho on a 4096-point grid
};

// Power iteration on the Galerkin matrix, normalized to unit mean.
// Throws ConvergenceError after 1e4 steps and VerificationError when the
// residuals or positivity checks fail.
DensityReport solve_invariant_density(const CircleMap& map, int order);
FourierSeries invariant_density(const CircleMap& map, int order);

// Factorization of (I - M) restricted to the modes n != 0.
class ZeroMeanSolver {
 public:
  // Throws VerificationError when the restricted system has condition
  // number above 1e12.
  explicit ZeroMeanSolver(const TransferMatrix& matrix);

  int order() const { return matrix_.order(); }
  double condition() const { return condition_; }
  const TransferMatrix& matrix() const { return matrix_; }

  // v with (I - M) v = rhs on n != 0 and zero mean. Requires |rhs_0| < 1e-10.
  FourierSeries solve(const FourierSeries& rhs, double* residual = nullptr) const;

 private:
  TransferMatrix matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_;
};

FourierSeries solve_zero_mean(const CircleMap& map, const FourierSeries& rhs,
                              int order);

struct ConjugacyReport {
  double residual = 0.0;
  std::vector<double> lhs;  // (L_S w)(h(x_j))
  std::vector<double> rhs;  // (1/h'(x_j)) L_T((w o h) h')(x_j)
};

// Checks (L_S w) o h = (1/h') L_T((w o h) h') for S = h o T o h^{-1} on a
// uniform grid, with h(x) = x + q(x). The left side is computed from S's own
// preimages through a numerical inverse of h.
ConjugacyReport transfer_conjugacy_check(const CircleMap& map,
                                         const FourierSeries& q,
                                         const FourierSeries& w,
                                         std::size_t grid_size = 1024);

}  // namespace lrc
