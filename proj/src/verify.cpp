#include "lrc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <string>

#include "lrc/error.hpp"

namespace lrc {

namespace {

constexpr double kStationaryTol = 1e-13;
constexpr int kStationaryMaxIter = 10000;

}  // namespace

void write_csv(std::ostream& out, const BinnedFunction& f) {
  out << "bin_midpoint,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.bins(); ++i)
    out << f.midpoint(i) << ',' << f.values[i] << '\n';
}

UlamModel::UlamModel(std::size_t bins, std::vector<std::size_t> col_start,
                     std::vector<std::size_t> rows, std::vector<double> weights)
    : bins_(bins),
      col_start_(std::move(col_start)),
      rows_(std::move(rows)),
      weights_(std::move(weights)) {
  if (col_start_.size() != bins_ + 1 || rows_.size() != weights_.size() ||
      col_start_.back() != rows_.size())
    throw InvalidArgument("UlamModel: inconsistent sparse layout");
  compute_stationary();
}

std::vector<double> UlamModel::apply(const std::vector<double>& v) const {
  std::vector<double> out(bins_, 0.0);
  for (std::size_t j = 0; j < bins_; ++j)
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
      out[rows_[k]] += weights_[k] * v[j];
  return out;
}

double UlamModel::column_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
    s += weights_[k];
  return s;
}

double UlamModel::entry(std::size_t i, std::size_t j) const {
  double s = 0.0;
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
    if (rows_[k] == i) s += weights_[k];
  return s;
}

void UlamModel::compute_stationary() {
  const double m = static_cast<double>(bins_);
  std::vector<double> v(bins_, 1.0);
  for (int it = 0; it < kStationaryMaxIter; ++it) {
    std::vector<double> next = apply(v);
    double total = 0.0;
    for (double x : next) total += x;
    double res = 0.0;
    for (std::size_t i = 0; i < bins_; ++i) {
      next[i] *= m / total;
      res += std::abs(next[i] - v[i]);
    }
    v = std::move(next);
    stationary_residual_ = res / m;
    if (stationary_residual_ < kStationaryTol) {
      stationary_.values = std::move(v);
      return;
    }
  }
  throw ConvergenceError("UlamModel: stationary vector did not converge");
}

UlamModel ulam_build(const CircleMap& map, std::size_t bins) {
  if (bins < 2) throw InvalidArgument("ulam_build: need at least 2 bins");
  const double m = static_cast<double>(bins);
  const long mb = static_cast<long>(bins);
  const double base = map.lift(0.0);
  const double top = base + map.degree();

  // Breakpoints in [0, 1] where the lift crosses a bin edge k / M.
  const long k_first = static_cast<long>(std::floor(base * m)) + 1;
  const long k_last = static_cast<long>(std::ceil(top * m)) - 1;
  std::vector<double> target_cuts;
  target_cuts.reserve(static_cast<std::size_t>(k_last - k_first + 3));
  target_cuts.push_back(0.0);
  for (long k = k_first; k <= k_last; ++k) {
    const double y = std::clamp(map.lift_inverse(static_cast<double>(k) / m),
                                target_cuts.back(), 1.0);
    target_cuts.push_back(y);
  }
  target_cuts.push_back(1.0);

  std::vector<std::size_t> col_start{0};
  std::vector<std::size_t> rows;
  std::vector<double> weights;
  rows.reserve(bins * (static_cast<std::size_t>(map.degree()) + 2));
  weights.reserve(rows.capacity());

  std::size_t src = 0;  // source bin [src/M, (src+1)/M]
  std::size_t seg = 0;  // target segment [cuts[seg], cuts[seg+1]]
  double u = 0.0;
  while (src < bins) {
    const double src_end = static_cast<double>(src + 1) / m;
    const double seg_end = target_cuts[seg + 1];
    const double v = std::min(src_end, seg_end);
    if (v > u) {
      const long k = k_first - 1 + static_cast<long>(seg);
      const std::size_t row = static_cast<std::size_t>(((k % mb) + mb) % mb);
      const double w = (v - u) * m;
      const std::size_t begin = col_start.back();
      if (rows.size() > begin && rows.back() == row) {
        weights.back() += w;
      } else {
        rows.push_back(row);
        weights.push_back(w);
      }
      u = v;
    }
    if (seg_end <= v && seg + 2 < target_cuts.size()) ++seg;
    if (src_end <= v) {
      ++src;
      col_start.push_back(rows.size());
    }
  }
  return UlamModel(bins, std::move(col_start), std::move(rows),
                   std::move(weights));
}

BinnedFunction fd_response(const PerturbedFamily& family, double delta,
                           std::size_t bins) {
  const UlamModel plus = ulam_build(family.member(delta), bins);
  const UlamModel minus = ulam_build(family.member(-delta), bins);
  BinnedFunction out;
  out.values.resize(bins);
  for (std::size_t i = 0; i < bins; ++i)
    out.values[i] = (plus.stationary().values[i] -
                     minus.stationary().values[i]) /
                    (2.0 * delta);
  return out;
}

double compare_l1(const BinnedFunction& binned, const FourierSeries& f) {
  const std::size_t bins = binned.bins();
  const double m = static_cast<double>(bins);
  FourierSeries fluct = f;
  fluct.set(0, 0.0);
  const FourierSeries prim = antiderivative(fluct);
  double total = 0.0;
  double left = prim.evaluate(0.0);
  for (std::size_t i = 0; i < bins; ++i) {
    const double right = prim.evaluate(static_cast<double>(i + 1) / m);
    const double avg = f.mean() + (right - left) * m;
    total += std::abs(binned.values[i] - avg);
    left = right;
  }
  return total / m;
}

double compare_l1(const BinnedFunction& a, const BinnedFunction& b) {
  if (a.bins() != b.bins())
    throw InvalidArgument("compare_l1: bin counts differ");
  double total = 0.0;
  for (std::size_t i = 0; i < a.bins(); ++i)
    total += std::abs(a.values[i] - b.values[i]);
  return total / static_cast<double>(a.bins());
}

}  // namespace lrc
