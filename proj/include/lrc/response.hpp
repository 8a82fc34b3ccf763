#pragma once

#include <memory>

#include "lrc/fourier.hpp"
#include "lrc/maps.hpp"
#include "lrc/transfer.hpp"

namespace lrc {

// An unperturbed map together with its invariant density and the cached
// operators every response computation at truncation order N reuses.
class ResponseProblem {
 public:
  // Computes the invariant density at the given order.
  static ResponseProblem create(const CircleMap& map,
                                int order = kDefaultOrder);
  // Throws VerificationError unless |L rho - rho|_inf < 1e-9.
  ResponseProblem(CircleMap map, FourierSeries density, int order);

  const CircleMap& map() const { return map_; }
  const FourierSeries& density() const { return density_; }
  int order() const { return order_; }
  // Order at which pseudospectral products are formed before projection.
  int padded_order() const { return 4 * order_; }

  const TransferSampler& sampler() const { return *sampler_; }
  const ZeroMeanSolver& solver() const { return *solver_; }
  const TransferMatrix& galerkin() const { return solver_->matrix(); }

 private:
  CircleMap map_;
  FourierSeries density_;
  int order_;
  std::shared_ptr<const TransferSampler> sampler_;
  std::shared_ptr<const ZeroMeanSolver> solver_;
};

// Derivative of the transfer operator along epsilon applied to w, in the
// compact form  -L((epsilon w / T')').
FourierSeries derivative_operator(const ResponseProblem& problem,
                                  const FourierSeries& epsilon,
                                  const FourierSeries& w);

// Same operator in the expanded three-term form
//   -L(w eps' / T') - L(eps w' / T') + L(eps T'' w / T'^2),
// with the integrand evaluated pointwise at the preimages.
FourierSeries derivative_operator_three_term(const ResponseProblem& problem,
                                             const FourierSeries& epsilon,
                                             const FourierSeries& w);

// First-order change of the invariant density, (I - L)^{-1} applied to the
// derivative operator at w = rho. The result has zero mean.
FourierSeries forward_response(const ResponseProblem& problem,
                               const FourierSeries& epsilon);

// L1 distance between the central difference (rho_delta - rho_-delta)/(2 delta)
// of spectrally computed densities and forward_response.
double finite_difference_response_check(const ResponseProblem& problem,
                                        const FourierSeries& epsilon,
                                        double delta);

// L1 norm by uniform (trapezoidal) quadrature on `grid_size` points.
double l1_norm(const FourierSeries& f, std::size_t grid_size = 4096);

}  // namespace lrc
