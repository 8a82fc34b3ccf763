#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lrc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr int kDefaultOrder = 64;

// Truncated Fourier series of a real 1-periodic function,
//   f(x) = sum_{n=-N}^{N} c_n exp(2 pi i n x),
// with c_{-n} = conj(c_n) maintained on every write.
class FourierSeries {
 public:
  explicit FourierSeries(int order = 0);
  // Full coefficient vector ordered n = -N..N. The input is projected onto
  // the Hermitian subspace (c_n and conj(c_{-n}) are averaged).
  FourierSeries(int order, std::span<const Complex> coeffs);

  static FourierSeries constant(double value, int order = 0);
  // amplitude * cos(2 pi k x) and amplitude * sin(2 pi k x).
  static FourierSeries cosine(int k, double amplitude = 1.0, int order = -1);
  static FourierSeries sine(int k, double amplitude = 1.0, int order = -1);

  int order() const { return order_; }
  // Coefficient of mode n; zero outside -N..N.
  Complex operator[](int n) const;
  // Sets c_n and c_{-n} = conj(value). For n = 0 only the real part is kept.
  void set(int n, Complex value);

  std::span<const Complex> coefficients() const { return coeffs_; }
  double mean() const { return coeffs_[order_].real(); }

  double evaluate(double x) const;
  // k-th derivative evaluated at x (k = 0 gives evaluate()).
  double evaluate(double x, int derivative) const;

  // Zero-padded or truncated copy at a different order.
  FourierSeries resized(int order) const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator-=(const FourierSeries& other);
  FourierSeries& operator*=(double s);

  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) {
    return a += b;
  }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) {
    return a -= b;
  }
  friend FourierSeries operator*(FourierSeries a, double s) { return a *= s; }
  friend FourierSeries operator*(double s, FourierSeries a) { return a *= s; }
  friend FourierSeries operator-(FourierSeries a) { return a *= -1.0; }

  // Largest |c_n - d_n| over the union of both mode ranges.
  friend double max_coeff_distance(const FourierSeries& a,
                                   const FourierSeries& b);

 private:
  int order_;
  std::vector<Complex> coeffs_;
};

// Real samples f(j/M), j = 0..M-1, with M a power of two.
struct GridFunction {
  std::vector<double> samples;

  GridFunction() = default;
  explicit GridFunction(std::vector<double> s) : samples(std::move(s)) {}
  std::size_t size() const { return samples.size(); }
  double point(std::size_t j) const {
    return static_cast<double>(j) / static_cast<double>(samples.size());
  }
};

// Per-mode weights of the Sobolev-type norm
//   |f|^2 = |f|_2^2 + a^2 |f'|_2^2 + b^2 |f''|_2^2 + c^2 |f'''|_2^2
//           + d^2 |f''''|_2^2,
// which is diagonal in the Fourier basis.
struct SobolevWeights {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  // Throws InvalidArgument on negative or non-finite entries, and on d == 0
  // when require_top_order is set.
  void validate(bool require_top_order = false) const;
  // W(n) = 1 + a^2 k^2 + b^2 k^4 + c^2 k^6 + d^2 k^8 with k = 2 pi n.
  double weight(int n) const;

  friend bool operator==(const SobolevWeights&, const SobolevWeights&) = default;
};

bool is_power_of_two(std::size_t m);
std::size_t next_power_of_two(std::size_t m);
// Smallest power of two >= 2 * order + 1.
std::size_t grid_size_for(int order);

// Samples -> coefficients up to order N. Requires M >= 2N + 1.
FourierSeries dft(const GridFunction& g, int order);
// Coefficients -> samples on M points. Requires M >= 2N + 1.
GridFunction idft(const FourierSeries& f, std::size_t grid_size);

// Samples a pointwise callable on M points.
template <typename F>
GridFunction sample(F&& fn, std::size_t grid_size) {
  std::vector<double> s(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j)
    s[j] = fn(static_cast<double>(j) / static_cast<double>(grid_size));
  return GridFunction(std::move(s));
}

// Mode n scaled by (2 pi i n)^order, order in 1..4.
FourierSeries differentiate(const FourierSeries& f, int order = 1);
// Inverse of differentiate on zero-mean series; returned mean is zero.
FourierSeries antiderivative(const FourierSeries& f);
// Dealiased product. out_order < 0 keeps the exact product order N_f + N_g.
FourierSeries multiply(const FourierSeries& f, const FourierSeries& g,
                       int out_order = -1);

double sobolev_norm(const FourierSeries& f, const SobolevWeights& w);
// Inner product associated with sobolev_norm.
double sobolev_inner(const FourierSeries& f, const FourierSeries& g,
                     const SobolevWeights& w);

// Integral of f over [lo, hi], exact for the truncated series.
double integrate(const FourierSeries& f, double lo, double hi);

// max_j |f(j/M)| on a uniform grid.
double sup_norm(const FourierSeries& f, std::size_t grid_size = 4096);

}  // namespace lrc
