#include "lrc/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "lrc/error.hpp"

namespace lrc {

namespace {

constexpr double kMeanTol = 1e-10;
constexpr double kConditionLimit = 1e12;
constexpr double kGalerkinResidualTol = 1e-10;
constexpr double kPointwiseResidualTol = 1e-9;
constexpr int kPowerMaxIter = 10000;

Eigen::VectorXcd to_vector(const FourierSeries& f, int order) {
  Eigen::VectorXcd v(2 * order + 1);
  for (int n = -order; n <= order; ++n) v(n + order) = f[n];
  return v;
}

FourierSeries from_vector(const Eigen::VectorXcd& v, int order) {
  std::vector<Complex> c(v.data(), v.data() + v.size());
  return FourierSeries(order, c);
}

double max_abs(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

// ---------------------------------------------------------------------------
// Pointwise transfer

TransferSampler::TransferSampler(const CircleMap& map, std::size_t grid_size)
    : grid_size_(grid_size), degree_(map.degree()) {
  preimages_.resize(grid_size_ * degree_);
  inverse_slopes_.resize(grid_size_ * degree_);
  for (std::size_t j = 0; j < grid_size_; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid_size_);
    const auto ys = map.preimages(x);
    for (int i = 0; i < degree_; ++i) {
      preimages_[j * degree_ + i] = ys[i];
      inverse_slopes_[j * degree_ + i] = 1.0 / map.derivative(ys[i]);
    }
  }
}

GridFunction TransferSampler::apply(const FourierSeries& w) const {
  return apply([&w](double y) { return w.evaluate(y); });
}

FourierSeries TransferSampler::apply_series(const FourierSeries& w,
                                            int out_order) const {
  return dft(apply(w), out_order);
}

std::size_t transfer_grid_size(int order) {
  return next_power_of_two(std::max<std::size_t>(
      64, 8 * static_cast<std::size_t>(std::max(order, 1))));
}

GridFunction apply_transfer(const CircleMap& map, const GridFunction& w) {
  const std::size_t m = w.size();
  if (!is_power_of_two(m) || m < 2)
    throw InvalidArgument("apply_transfer: grid size must be a power of two");
  const FourierSeries interp = dft(w, static_cast<int>(m / 2) - 1);
  return TransferSampler(map, m).apply(interp);
}

FourierSeries apply_transfer(const CircleMap& map, const FourierSeries& w,
                             int out_order) {
  if (out_order < 0) out_order = w.order();
  return TransferSampler(map, transfer_grid_size(out_order))
      .apply_series(w, out_order);
}

// ---------------------------------------------------------------------------
// Galerkin matrix

TransferMatrix::TransferMatrix(int order, Eigen::MatrixXcd entries)
    : order_(order), entries_(std::move(entries)) {
  if (entries_.rows() != 2 * order + 1 || entries_.cols() != 2 * order + 1)
    throw InvalidArgument("TransferMatrix: shape does not match order");
}

FourierSeries TransferMatrix::apply(const FourierSeries& w) const {
  return from_vector(entries_ * to_vector(w, order_), order_);
}

TransferMatrix galerkin_matrix(const CircleMap& map, int order) {
  if (order < 1) throw InvalidArgument("galerkin_matrix: order must be >= 1");
  const std::size_t n = static_cast<std::size_t>(order);
  double max_slope = 0.0;
  for (std::size_t j = 0; j < kExpansivityGrid; ++j)
    max_slope = std::max(
        max_slope, map.derivative(static_cast<double>(j) / kExpansivityGrid));
  const std::size_t band =
      n * (1 + static_cast<std::size_t>(std::ceil(max_slope))) + 16;
  const std::size_t mq = next_power_of_two(std::max(8 * n, 4 * band));

  std::vector<double> lift(mq);
  for (std::size_t m = 0; m < mq; ++m)
    lift[m] = map.lift(static_cast<double>(m) / static_cast<double>(mq));

  Eigen::MatrixXcd entries(2 * order + 1, 2 * order + 1);
  std::vector<Complex> in(mq);
  const double scale = 1.0 / static_cast<double>(mq);
  for (int j = -order; j <= order; ++j) {
    for (std::size_t m = 0; m < mq; ++m) {
      // exp(-2 pi i j L(x)); the integer part of L drops out.
      in[m] = std::polar(1.0, -kTwoPi * j * (lift[m] - std::floor(lift[m])));
    }
    const auto out = detail::fft(in, +1);
    for (int k = -order; k <= order; ++k) {
      const std::size_t idx =
          k >= 0 ? static_cast<std::size_t>(k) : mq - static_cast<std::size_t>(-k);
      entries(j + order, k + order) = out[idx] * scale;
    }
  }
  return TransferMatrix(order, std::move(entries));
}

// ---------------------------------------------------------------------------
// Invariant density

DensityReport solve_invariant_density(const CircleMap& map, int order) {
  const TransferMatrix matrix = galerkin_matrix(map, order);
  const Eigen::MatrixXcd& m = matrix.entries();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * order + 1);
  v(order) = 1.0;

  DensityReport report;
  double prev_step = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 1; it <= kPowerMaxIter; ++it) {
    Eigen::VectorXcd next = m * v;
    next /= next(order).real();
    const double step = max_abs(next - v);
    v = std::move(next);
    report.iterations = it;
    if (step < 1e-15) {
      converged = true;
      break;
    }
    // Aitken-style estimate of the remaining error from the observed ratio.
    const double ratio = step / prev_step;
    if (it > 1 && ratio < 1.0 && step * ratio / (1.0 - ratio) < 1e-14) {
      converged = true;
      break;
    }
    prev_step = step;
  }
  if (!converged)
    throw ConvergenceError("invariant_density: power iteration did not "
                           "converge; spectral gap too small at order " +
                           std::to_string(order));

  report.density = from_vector(v, order);
  report.density.set(0, 1.0);
  report.galerkin_residual =
      max_abs(m * to_vector(report.density, order) -
              to_vector(report.density, order));

  const TransferSampler sampler(map, transfer_grid_size(order));
  const GridFunction lrho = sampler.apply(report.density);
  double pw = 0.0;
  for (std::size_t j = 0; j < lrho.size(); ++j)
    pw = std::max(pw, std::abs(lrho.samples[j] -
                               report.density.evaluate(lrho.point(j))));
  report.pointwise_residual = pw;

  const GridFunction values = idft(report.density, 4096);
  report.min_value =
      *std::min_element(values.samples.begin(), values.samples.end());

  if (report.galerkin_residual > kGalerkinResidualTol)
    throw VerificationError("invariant_density: Galerkin residual too large",
                            report.galerkin_residual);
  if (report.pointwise_residual > kPointwiseResidualTol)
    throw VerificationError(
        "invariant_density: pointwise residual too large; raise the order",
        report.pointwise_residual);
  if (!(report.min_value > 0.0))
    throw VerificationError("invariant_density: density is not positive",
                            report.min_value);
  return report;
}

FourierSeries invariant_density(const CircleMap& map, int order) {
  return solve_invariant_density(map, order).density;
}

// ---------------------------------------------------------------------------
// Zero-mean solves

namespace {

Eigen::MatrixXcd restricted_system(const TransferMatrix& matrix) {
  const int n = matrix.order();
  const Eigen::MatrixXcd full =
      Eigen::MatrixXcd::Identity(2 * n + 1, 2 * n + 1) - matrix.entries();
  Eigen::MatrixXcd r(2 * n, 2 * n);
  auto keep = [n](int i) { return i < n ? i : i + 1; };
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) r(i, j) = full(keep(i), keep(j));
  return r;
}

}  // namespace

ZeroMeanSolver::ZeroMeanSolver(const TransferMatrix& matrix)
    : matrix_(matrix) {
  const Eigen::MatrixXcd sys = restricted_system(matrix_);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys);
  const auto& s = svd.singularValues();
  condition_ = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                     : std::numeric_limits<double>::infinity();
  if (condition_ > kConditionLimit)
    throw VerificationError(
        "solve_zero_mean: (I - M) is near-singular on the zero-mean modes",
        condition_);
  lu_.compute(sys);
}

FourierSeries ZeroMeanSolver::solve(const FourierSeries& rhs,
                                    double* residual) const {
  if (std::abs(rhs[0]) > kMeanTol)
    throw InvalidArgument("solve_zero_mean: right-hand side has mean " +
                          std::to_string(rhs.mean()));
  const int n = order();
  Eigen::VectorXcd b(2 * n);
  for (int i = 0; i < n; ++i) {
    b(i) = rhs[i - n];
    b(n + i) = rhs[i + 1];
  }
  const Eigen::VectorXcd x = lu_.solve(b);
  FourierSeries v(n);
  for (int k = 1; k <= n; ++k) {
    // Average the two mirrored unknowns to remove round-off asymmetry.
    v.set(k, 0.5 * (x(n + k - 1) + std::conj(x(n - k))));
  }
  const FourierSeries mv = matrix_.apply(v);
  double res = 0.0;
  for (int k = 1; k <= n; ++k)
    res = std::max(res, std::abs(v[k] - mv[k] - rhs[k]));
  if (residual) *residual = res;
  if (res > 1e-10)
    throw VerificationError("solve_zero_mean: residual too large", res);
  return v;
}

FourierSeries solve_zero_mean(const CircleMap& map, const FourierSeries& rhs,
                              int order) {
  return ZeroMeanSolver(galerkin_matrix(map, order)).solve(rhs);
}

// ---------------------------------------------------------------------------
// Conjugacy identity

ConjugacyReport transfer_conjugacy_check(const CircleMap& map,
                                         const FourierSeries& q,
                                         const FourierSeries& w,
                                         std::size_t grid_size) {
  const FourierSeries dq = q.order() > 0 ? differentiate(q, 1) : FourierSeries(0);
  {
    const GridFunction slope =
        idft(dq, next_power_of_two(std::max<std::size_t>(
                     kExpansivityGrid, grid_size_for(dq.order()))));
    for (double s : slope.samples)
      if (!(1.0 + s > 0.0))
        throw InvalidArgument(
            "transfer_conjugacy_check: h is not a diffeomorphism");
  }
  double q_bound = 1e-12;
  for (const Complex& c : q.coefficients()) q_bound += std::abs(c);

  auto h = [&q](double y) { return y + q.evaluate(y); };
  auto dh = [&dq](double y) { return 1.0 + dq.evaluate(y); };
  auto h_inv = [&](double y) {
    return solve_monotone(h, dh, y, y - q_bound, y + q_bound, y);
  };
  const int d = map.degree();
  // Lift of S = h o T o h^{-1} and its derivative by the chain rule.
  auto lift_s = [&](double y) { return h(map.lift(h_inv(y))); };
  auto ds = [&](double y) {
    const double u = h_inv(y);
    return dh(map.lift(u)) * map.derivative(u) / dh(u);
  };
  const double base = lift_s(0.0);

  ConjugacyReport report;
  report.lhs.resize(grid_size);
  report.rhs.resize(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid_size);

    const double z = wrap_unit(h(x));
    const double first = std::ceil(base - z);
    double lhs = 0.0;
    for (int i = 0; i < d; ++i) {
      const double t = z + first + i;
      const double y =
          solve_monotone(lift_s, ds, t, 0.0, 1.0, (t - base) / d);
      lhs += w.evaluate(y) / ds(y);
    }

    double rhs = 0.0;
    for (double y : map.preimages(x))
      rhs += w.evaluate(h(y)) * dh(y) / map.derivative(y);
    rhs /= dh(x);

    report.lhs[j] = lhs;
    report.rhs[j] = rhs;
    report.residual = std::max(report.residual, std::abs(lhs - rhs));
  }
  return report;
}

}  // namespace lrc
