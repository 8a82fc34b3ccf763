#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "lrc/fourier.hpp"
#include "lrc/maps.hpp"

namespace lrc {

// Piecewise-constant function on M equal bins of [0, 1).
struct BinnedFunction {
  std::vector<double> values;

  std::size_t bins() const { return values.size(); }
  double midpoint(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(values.size());
  }
};

// CSV rows "bin_midpoint,value" after a header line.
void write_csv(std::ostream& out, const BinnedFunction& f);

// Ulam discretization: P[i][j] is the fraction of bin j that the map sends
// into bin i, from exact intersections of monotone-branch preimages. Stored
// column-compressed; each column touches about d + 1 rows.
class UlamModel {
 public:
  UlamModel(std::size_t bins, std::vector<std::size_t> col_start,
            std::vector<std::size_t> rows, std::vector<double> weights);

  std::size_t bins() const { return bins_; }
  // Density normalization: sums to bins(), so values approximate rho.
  const BinnedFunction& stationary() const { return stationary_; }
  double stationary_residual() const { return stationary_residual_; }

  std::vector<double> apply(const std::vector<double>& v) const;
  double column_sum(std::size_t j) const;
  // Entry P[i][j]; zero when not stored.
  double entry(std::size_t i, std::size_t j) const;

 private:
  void compute_stationary();

  std::size_t bins_;
  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> rows_;
  std::vector<double> weights_;
  BinnedFunction stationary_;
  double stationary_residual_ = 0.0;
};

// Requires bins >= 2. Preimage failures propagate as ConvergenceError.
UlamModel ulam_build(const CircleMap& map, std::size_t bins);

// (stationary(T_delta) - stationary(T_-delta)) / (2 delta).
BinnedFunction fd_response(const PerturbedFamily& family, double delta,
                           std::size_t bins);

// L1 distance between binned data and the bin averages of f.
double compare_l1(const BinnedFunction& binned, const FourierSeries& f);
double compare_l1(const BinnedFunction& a, const BinnedFunction& b);

}  // namespace lrc
