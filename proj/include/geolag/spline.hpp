#pragma once

// Piecewise-polynomial interpolation of scalar samples with derivative access.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "geolag/errors.hpp"

namespace geolag {

struct SplineValue {
  double value;
  double first;
  double second;
};

namespace detail {

inline void require_increasing(std::span<const double> t, std::size_t min_knots, const char* what) {
  if (t.size() < min_knots) {
    throw DomainError(std::string(what) + ": need at least " + std::to_string(min_knots) + " knots");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw DomainError(std::string(what) + ": knots must strictly increase");
  }
}

inline std::size_t locate(std::span<const double> t, double x) {
  auto it = std::upper_bound(t.begin(), t.end(), x);
  std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  return std::min(i, t.size() - 2);
}

}  // namespace detail

/// Cubic interpolating spline with not-a-knot end conditions.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<double> y) : t_(std::move(t)), y_(std::move(y)) {
    detail::require_increasing(t_, 4, "CubicSpline");
    if (y_.size() != t_.size()) throw DomainError("CubicSpline: size mismatch");
    solve_second_derivatives();
  }

  SplineValue operator()(double x) const {
    const std::size_t i = detail::locate(t_, x);
    const double h = t_[i + 1] - t_[i];
    const double a = (t_[i + 1] - x) / h;
    const double b = (x - t_[i]) / h;
    const double m0 = m_[i];
    const double m1 = m_[i + 1];
    const double value = a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
    const double first = (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h / 6.0 * m0 +
                         (3.0 * b * b - 1.0) * h / 6.0 * m1;
    const double second = a * m0 + b * m1;
    return {value, first, second};
  }

  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  // Second derivatives M_i from the standard continuity system. Not-a-knot rows
  // (third derivative continuous at knots 1 and n-2) are folded into the first and
  // last interior equations so the system stays tridiagonal.
  void solve_second_derivatives() {
    const std::size_t n = t_.size();
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t_[i + 1] - t_[i];
    auto slope = [&](std::size_t i) { return (y_[i + 1] - y_[i]) / h[i]; };

    const std::size_t k = n - 2;  // unknowns M_1 .. M_{n-2}
    std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0), rhs(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 1;
      lo[j] = h[i - 1];
      di[j] = 2.0 * (h[i - 1] + h[i]);
      up[j] = h[i];
      rhs[j] = 6.0 * (slope(i) - slope(i - 1));
    }
    // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
    {
      const double h0 = h[0], h1 = h[1];
      di[0] = (h0 + h1) * (h0 + 2.0 * h1) / h1;
      up[0] = (h1 * h1 - h0 * h0) / h1;
      lo[0] = 0.0;
    }
    // M_{n-1} = ((hb + ha) M_{n-2} - hb M_{n-3}) / ha, with ha = h[n-3], hb = h[n-2]
    {
      const double ha = h[n - 3], hb = h[n - 2];
      di[k - 1] = (ha + hb) * (hb + 2.0 * ha) / ha;
      lo[k - 1] = (ha * ha - hb * hb) / ha;
      up[k - 1] = 0.0;
    }

    m_.assign(n, 0.0);
    // Thomas algorithm.
    for (std::size_t j = 1; j < k; ++j) {
      const double w = lo[j] / di[j - 1];
      di[j] -= w * up[j - 1];
      rhs[j] -= w * rhs[j - 1];
    }
    std::vector<double> mid(k);
    mid[k - 1] = rhs[k - 1] / di[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) mid[j] = (rhs[j] - up[j] * mid[j + 1]) / di[j];
    for (std::size_t j = 0; j < k; ++j) m_[j + 1] = mid[j];
    m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
    const double ha = h[n - 3], hb = h[n - 2];
    m_[n - 1] = ((ha + hb) * m_[n - 2] - hb * m_[n - 3]) / ha;
  }

  std::vector<double> t_, y_, m_;
};

/// Quintic Hermite interpolation through values, first and second derivatives.
class QuinticHermite {
 public:
  QuinticHermite(std::vector<double> t, std::vector<double> y, std::vector<double> dy,
                 std::vector<double> ddy)
      : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)), ddy_(std::move(ddy)) {
    detail::require_increasing(t_, 2, "QuinticHermite");
    if (y_.size() != t_.size() || dy_.size() != t_.size() || ddy_.size() != t_.size()) {
      throw DomainError("QuinticHermite: size mismatch");
    }
    cumulative_.assign(t_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < t_.size(); ++i) cumulative_[i + 1] = cumulative_[i] + piece_integral(i, 1.0);
  }

  /// ∫ from the first knot to x.
  double integral(double x) const {
    const std::size_t i = detail::locate(t_, x);
    return cumulative_[i] + piece_integral(i, (x - t_[i]) / (t_[i + 1] - t_[i]));
  }

  SplineValue operator()(double x) const {
    const std::size_t i = detail::locate(t_, x);
    const double h = t_[i + 1] - t_[i];
    const double s = (x - t_[i]) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;

    // Basis on [0,1] and its first two derivatives.
    const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double h2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    const double h3 = 10 * s3 - 15 * s4 + 6 * s5;
    const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double h5 = 0.5 * (s3 - 2 * s4 + s5);

    const double d0 = -30 * s2 + 60 * s3 - 30 * s4;
    const double d1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    const double d2 = 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4);
    const double d3 = 30 * s2 - 60 * s3 + 30 * s4;
    const double d4 = -12 * s2 + 28 * s3 - 15 * s4;
    const double d5 = 0.5 * (3 * s2 - 8 * s3 + 5 * s4);

    const double e0 = -60 * s + 180 * s2 - 120 * s3;
    const double e1 = -36 * s + 96 * s2 - 60 * s3;
    const double e2 = 0.5 * (2 - 18 * s + 36 * s2 - 20 * s3);
    const double e3 = 60 * s - 180 * s2 + 120 * s3;
    const double e4 = -24 * s + 84 * s2 - 60 * s3;
    const double e5 = 0.5 * (6 * s - 24 * s2 + 20 * s3);

    const double p0 = y_[i], v0 = dy_[i] * h, a0 = ddy_[i] * h * h;
    const double p1 = y_[i + 1], v1 = dy_[i + 1] * h, a1 = ddy_[i + 1] * h * h;

    const double value = h0 * p0 + h1 * v0 + h2 * a0 + h3 * p1 + h4 * v1 + h5 * a1;
    const double first = (d0 * p0 + d1 * v0 + d2 * a0 + d3 * p1 + d4 * v1 + d5 * a1) / h;
    const double second = (e0 * p0 + e1 * v0 + e2 * a0 + e3 * p1 + e4 * v1 + e5 * a1) / (h * h);
    return {value, first, second};
  }

  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  // ∫ over [t_i, t_i + s·h] of piece i.
  double piece_integral(std::size_t i, double s) const {
    const double h = t_[i + 1] - t_[i];
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s, s6 = s5 * s;
    const double i0 = s - 2.5 * s4 + 3 * s5 - s6;
    const double i1 = 0.5 * s2 - 1.5 * s4 + 1.6 * s5 - 0.5 * s6;
    const double i2 = 0.5 * (s3 / 3.0 - 0.75 * s4 + 0.6 * s5 - s6 / 6.0);
    const double i3 = 2.5 * s4 - 3 * s5 + s6;
    const double i4 = -s4 + 1.4 * s5 - 0.5 * s6;
    const double i5 = 0.5 * (0.25 * s4 - 0.4 * s5 + s6 / 6.0);
    return h * (i0 * y_[i] + i1 * dy_[i] * h + i2 * ddy_[i] * h * h + i3 * y_[i + 1] + i4 * dy_[i + 1] * h +
                i5 * ddy_[i + 1] * h * h);
  }

  std::vector<double> t_, y_, dy_, ddy_, cumulative_;
};

}  // namespace geolag
