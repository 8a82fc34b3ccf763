#include "lrc/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fft.hpp"
#include "lrc/error.hpp"

namespace lrc {

namespace {

constexpr double kImagResidueTol = 1e-12;
constexpr double kMeanTol = 1e-10;

Complex ipow(Complex base, int k) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FourierSeries

FourierSeries::FourierSeries(int order)
    : order_(order), coeffs_(2 * static_cast<std::size_t>(order) + 1) {
  if (order < 0) throw InvalidArgument("FourierSeries: negative order");
}

FourierSeries::FourierSeries(int order, std::span<const Complex> coeffs)
    : FourierSeries(order) {
  if (coeffs.size() != coeffs_.size())
    throw InvalidArgument("FourierSeries: expected " +
                          std::to_string(coeffs_.size()) + " coefficients");
  for (int n = 0; n <= order; ++n) {
    const Complex pos = coeffs[order + n];
    const Complex neg = coeffs[order - n];
    set(n, 0.5 * (pos + std::conj(neg)));
  }
}

FourierSeries FourierSeries::constant(double value, int order) {
  FourierSeries f(order);
  f.set(0, value);
  return f;
}

FourierSeries FourierSeries::cosine(int k, double amplitude, int order) {
  FourierSeries f(order < 0 ? std::abs(k) : order);
  if (k == 0) {
    f.set(0, amplitude);
  } else {
    f.set(std::abs(k), 0.5 * amplitude);
  }
  return f;
}

FourierSeries FourierSeries::sine(int k, double amplitude, int order) {
  FourierSeries f(order < 0 ? std::abs(k) : order);
  if (k != 0) {
    // sin(2 pi k x) = (e^{2 pi i k x} - e^{-2 pi i k x}) / (2i)
    const double s = k > 0 ? 1.0 : -1.0;
    f.set(std::abs(k), Complex(0.0, -0.5 * amplitude * s));
  }
  return f;
}

Complex FourierSeries::operator[](int n) const {
  if (n < -order_ || n > order_) return {};
  return coeffs_[static_cast<std::size_t>(n + order_)];
}

void FourierSeries::set(int n, Complex value) {
  if (n < -order_ || n > order_)
    throw InvalidArgument("FourierSeries::set: mode out of range");
  if (n == 0) {
    coeffs_[order_] = Complex(value.real(), 0.0);
    return;
  }
  if (n < 0) {
    n = -n;
    value = std::conj(value);
  }
  coeffs_[order_ + n] = value;
  coeffs_[order_ - n] = std::conj(value);
}

double FourierSeries::evaluate(double x) const { return evaluate(x, 0); }

double FourierSeries::evaluate(double x, int derivative) const {
  double sum = derivative == 0 ? coeffs_[order_].real() : 0.0;
  const Complex step = std::polar(1.0, kTwoPi * x);
  Complex z = step;
  for (int n = 1; n <= order_; ++n) {
    if (n % 32 == 0) z = std::polar(1.0, kTwoPi * x * n);
    Complex term = coeffs_[order_ + n] * z;
    if (derivative > 0) term *= ipow(Complex(0.0, kTwoPi * n), derivative);
    sum += 2.0 * term.real();
    z *= step;
  }
  return sum;
}

FourierSeries FourierSeries::resized(int order) const {
  FourierSeries out(order);
  const int m = std::min(order, order_);
  for (int n = 0; n <= m; ++n) out.set(n, (*this)[n]);
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  if (other.order_ > order_) *this = resized(other.order_);
  for (int n = 0; n <= other.order_; ++n) set(n, (*this)[n] + other[n]);
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& other) {
  if (other.order_ > order_) *this = resized(other.order_);
  for (int n = 0; n <= other.order_; ++n) set(n, (*this)[n] - other[n]);
  return *this;
}

FourierSeries& FourierSeries::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double max_coeff_distance(const FourierSeries& a, const FourierSeries& b) {
  const int m = std::max(a.order(), b.order());
  double d = 0.0;
  for (int n = -m; n <= m; ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

// ---------------------------------------------------------------------------
// SobolevWeights

void SobolevWeights::validate(bool require_top_order) const {
  for (double v : {a, b, c, d}) {
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidArgument("SobolevWeights: weights must be finite and >= 0");
  }
  if (require_top_order && !(d > 0.0))
    throw InvalidArgument("SobolevWeights: fourth-order weight d must be > 0");
}

double SobolevWeights::weight(int n) const {
  const double k2 = (kTwoPi * n) * (kTwoPi * n);
  const double k4 = k2 * k2;
  return 1.0 + a * a * k2 + b * b * k4 + c * c * k4 * k2 + d * d * k4 * k4;
}

// ---------------------------------------------------------------------------
// Grid transforms

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

std::size_t grid_size_for(int order) {
  return next_power_of_two(2 * static_cast<std::size_t>(order) + 1);
}

FourierSeries dft(const GridFunction& g, int order) {
  const std::size_t m = g.size();
  if (!is_power_of_two(m))
    throw InvalidArgument("dft: grid size must be a power of two");
  if (m < 2 * static_cast<std::size_t>(order) + 1)
    throw InvalidArgument("dft: grid of " + std::to_string(m) +
                          " points aliases order " + std::to_string(order));
  std::vector<Complex> in(g.samples.begin(), g.samples.end());
  const auto out = detail::fft(std::move(in), -1);
  const double scale = 1.0 / static_cast<double>(m);
  FourierSeries f(order);
  f.set(0, out[0].real() * scale);
  for (int n = 1; n <= order; ++n) {
    const Complex pos = out[static_cast<std::size_t>(n)];
    const Complex neg = out[m - static_cast<std::size_t>(n)];
    f.set(n, 0.5 * (pos + std::conj(neg)) * scale);
  }
  return f;
}

GridFunction idft(const FourierSeries& f, std::size_t grid_size) {
  const int order = f.order();
  if (!is_power_of_two(grid_size))
    throw InvalidArgument("idft: grid size must be a power of two");
  if (grid_size < 2 * static_cast<std::size_t>(order) + 1)
    throw InvalidArgument("idft: grid too small for order");
  std::vector<Complex> in(grid_size);
  double scale = 1.0;
  for (int n = -order; n <= order; ++n) {
    const std::size_t idx =
        n >= 0 ? static_cast<std::size_t>(n)
               : grid_size - static_cast<std::size_t>(-n);
    in[idx] = f[n];
    scale += std::abs(f[n]);
  }
  const auto out = detail::fft(std::move(in), +1);
  std::vector<double> samples(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    if (std::abs(out[j].imag()) > kImagResidueTol * scale)
      throw Error("idft: imaginary residue " +
                  std::to_string(out[j].imag()) +
                  " indicates broken Hermitian symmetry");
    samples[j] = out[j].real();
  }
  return GridFunction(std::move(samples));
}

// ---------------------------------------------------------------------------
// Spectral calculus

FourierSeries differentiate(const FourierSeries& f, int order) {
  if (order < 1 || order > 4)
    throw InvalidArgument("differentiate: order must be in 1..4");
  FourierSeries out(f.order());
  for (int n = 1; n <= f.order(); ++n)
    out.set(n, f[n] * ipow(Complex(0.0, kTwoPi * n), order));
  return out;
}

FourierSeries antiderivative(const FourierSeries& f) {
  if (std::abs(f[0]) > kMeanTol)
    throw InvalidArgument("antiderivative: nonzero mean " +
                          std::to_string(f.mean()) +
                          " has no periodic antiderivative");
  FourierSeries out(f.order());
  for (int n = 1; n <= f.order(); ++n)
    out.set(n, f[n] / Complex(0.0, kTwoPi * n));
  return out;
}

FourierSeries multiply(const FourierSeries& f, const FourierSeries& g,
                       int out_order) {
  const int full = f.order() + g.order();
  const std::size_t m = grid_size_for(full);
  const GridFunction fs = idft(f, m);
  const GridFunction gs = idft(g, m);
  std::vector<double> prod(m);
  for (std::size_t j = 0; j < m; ++j) prod[j] = fs.samples[j] * gs.samples[j];
  FourierSeries out = dft(GridFunction(std::move(prod)), full);
  return out_order < 0 ? out : out.resized(out_order);
}

double sobolev_inner(const FourierSeries& f, const FourierSeries& g,
                     const SobolevWeights& w) {
  const int m = std::min(f.order(), g.order());
  double s = (f[0] * std::conj(g[0])).real();
  for (int n = 1; n <= m; ++n)
    s += 2.0 * w.weight(n) * (f[n] * std::conj(g[n])).real();
  return s;
}

double sobolev_norm(const FourierSeries& f, const SobolevWeights& w) {
  return std::sqrt(std::max(0.0, sobolev_inner(f, f, w)));
}

double integrate(const FourierSeries& f, double lo, double hi) {
  double s = f.mean() * (hi - lo);
  for (int n = 1; n <= f.order(); ++n) {
    const Complex diff =
        std::polar(1.0, kTwoPi * n * hi) - std::polar(1.0, kTwoPi * n * lo);
    s += 2.0 * (f[n] * diff / Complex(0.0, kTwoPi * n)).real();
  }
  return s;
}

double sup_norm(const FourierSeries& f, std::size_t grid_size) {
  const std::size_t m =
      std::max(grid_size, grid_size_for(f.order()));
  const GridFunction s = idft(f, next_power_of_two(m));
  double r = 0.0;
  for (double v : s.samples) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace lrc
