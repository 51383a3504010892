#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aslgloss/error.hpp"

namespace aslgloss {

/// s(t) = a + b*u + c*u^2 + d*u^3 with u = t - t_k on [t_k, t_{k+1}].
struct CubicSegment {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double value(double u) const { return a + u * (b + u * (c + u * d)); }
  double first_derivative(double u) const { return b + u * (2.0 * c + u * 3.0 * d); }
  double second_derivative(double u) const { return 2.0 * c + 6.0 * d * u; }
};

/// Piecewise cubic over strictly increasing knots. Outside the knot range the
/// first/last segment polynomial is extended.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> knots, std::vector<CubicSegment> segments)
      : knots_(std::move(knots)), segments_(std::move(segments)) {}

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<CubicSegment>& segments() const { return segments_; }

  /// Index of the segment used to evaluate `t`.
  std::size_t segment_index(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    auto k = static_cast<std::ptrdiff_t>(it - knots_.begin()) - 1;
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(segments_.size()) - 1);
    return static_cast<std::size_t>(k);
  }

  double operator()(double t) const { return value(t); }
  double value(double t) const {
    const auto k = segment_index(t);
    return segments_[k].value(t - knots_[k]);
  }
  double first_derivative(double t) const {
    const auto k = segment_index(t);
    return segments_[k].first_derivative(t - knots_[k]);
  }
  double second_derivative(double t) const {
    const auto k = segment_index(t);
    return segments_[k].second_derivative(t - knots_[k]);
  }

 private:
  std::vector<double> knots_;
  std::vector<CubicSegment> segments_;
};

/// Factorizes the natural-spline tridiagonal system for a fixed set of knot
/// times once, then fits any number of value tracks over those knots.
///
/// Unknowns are the second derivatives M_1..M_{n-1} at interior knots
/// (M_0 = M_n = 0):
///   h_{i-1} M_{i-1} + 2 (h_{i-1} + h_i) M_i + h_i M_{i+1}
///       = 6 ((y_{i+1} - y_i) / h_i - (y_i - y_{i-1}) / h_{i-1})
/// solved with the Thomas algorithm (the matrix is strictly diagonally
/// dominant, so no pivoting is needed).
class NaturalSplineSolver {
 public:
  explicit NaturalSplineSolver(std::span<const double> times) : knots_(times.begin(), times.end()) {
    if (knots_.size() < 2) throw Error(ErrorCode::InvalidArgument, "spline needs at least 2 knots");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (!std::isfinite(knots_[i])) throw Error(ErrorCode::InvalidArgument, "non-finite knot time");
      if (i > 0 && knots_[i] == knots_[i - 1])
        throw Error(ErrorCode::DuplicateKnotTime, "duplicate knot time " + std::to_string(knots_[i]),
                    static_cast<long long>(i));
      if (i > 0 && knots_[i] < knots_[i - 1])
        throw Error(ErrorCode::InvalidArgument, "knot times must be strictly increasing", static_cast<long long>(i));
    }
    const std::size_t n = knots_.size() - 1;
    h_.resize(n);
    for (std::size_t i = 0; i < n; ++i) h_[i] = knots_[i + 1] - knots_[i];

    // Row r (0-based) of the interior system corresponds to knot r + 1.
    const std::size_t m = n - 1;
    upper_.resize(m);
    pivot_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      const double sub = h_[r];
      const double diag = 2.0 * (h_[r] + h_[r + 1]);
      const double sup = h_[r + 1];
      pivot_[r] = r == 0 ? diag : diag - sub * upper_[r - 1];
      upper_[r] = sup / pivot_[r];
    }
  }

  const std::vector<double>& knots() const { return knots_; }

  CubicSpline fit(std::span<const double> values) const {
    std::vector<CubicSegment> segments;
    fit_into(values, segments);
    return CubicSpline(knots_, std::move(segments));
  }

  void fit_into(std::span<const double> values, std::vector<CubicSegment>& segments) const {
    const std::size_t n = h_.size();
    if (values.size() != n + 1) throw Error(ErrorCode::LengthMismatch, "spline values/knots length mismatch");
    for (double v : values)
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite spline value");

    std::vector<double> second(n + 1, 0.0);
    const std::size_t m = n - 1;
    if (m > 0) {
      std::vector<double> rhs(m);
      for (std::size_t r = 0; r < m; ++r) {
        const double right = (values[r + 2] - values[r + 1]) / h_[r + 1];
        const double left = (values[r + 1] - values[r]) / h_[r];
        rhs[r] = 6.0 * (right - left);
      }
      rhs[0] /= pivot_[0];
      for (std::size_t r = 1; r < m; ++r) rhs[r] = (rhs[r] - h_[r] * rhs[r - 1]) / pivot_[r];
      second[m] = rhs[m - 1];
      for (std::size_t r = m - 1; r-- > 0;) rhs[r] -= upper_[r] * rhs[r + 1];
      for (std::size_t r = 0; r < m; ++r) second[r + 1] = rhs[r];
    }

    segments.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = h_[i];
      CubicSegment& s = segments[i];
      s.a = values[i];
      s.b = (values[i + 1] - values[i]) / h - h * (2.0 * second[i] + second[i + 1]) / 6.0;
      s.c = second[i] / 2.0;
      s.d = (second[i + 1] - second[i]) / (6.0 * h);
    }
  }

 private:
  std::vector<double> knots_;
  std::vector<double> h_;
  std::vector<double> upper_;  // normalized super-diagonal after elimination
  std::vector<double> pivot_;  // diagonal after elimination
};

/// Natural cubic spline through (times[k], values[k]). Two knots give the
/// straight line between them.
inline CubicSpline fit_spline(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw Error(ErrorCode::LengthMismatch, "times/values length mismatch");
  return NaturalSplineSolver(times).fit(values);
}

struct KeyframeTrack {
  std::vector<double> times;
  std::vector<double> values;
};

inline CubicSpline fit_spline(const KeyframeTrack& track) { return fit_spline(track.times, track.values); }

/// Piecewise-linear interpolation through the knots, extended linearly
/// beyond the ends. Used as the comparison baseline for reconstruction.
inline double linear_interpolate(std::span<const double> times, std::span<const double> values, double t) {
  if (times.size() < 2 || times.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "linear interpolation needs >= 2 matching knots");
  auto it = std::upper_bound(times.begin(), times.end(), t);
  auto k = static_cast<std::ptrdiff_t>(it - times.begin()) - 1;
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(times.size()) - 2);
  const auto i = static_cast<std::size_t>(k);
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  return values[i] + w * (values[i + 1] - values[i]);
}

}  // namespace aslgloss
