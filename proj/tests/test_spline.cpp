#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "geolag/errors.hpp"
#include "geolag/spline.hpp"

using namespace geolag;

TEST(CubicSpline, ReproducesCubicsExactly) {
  std::vector<double> t, y;
  for (int i = 0; i < 6; ++i) {
    const double x = 0.3 * i + 0.1 * i * i;
    t.push_back(x);
    y.push_back(2.0 * x * x * x - x + 1.0);
  }
  const CubicSpline s(t, y);
  for (double x = t.front(); x <= t.back(); x += 0.01) {
    const auto v = s(x);
    EXPECT_NEAR(v.value, 2.0 * x * x * x - x + 1.0, 1e-11);
    EXPECT_NEAR(v.first, 6.0 * x * x - 1.0, 1e-10);
    EXPECT_NEAR(v.second, 12.0 * x, 1e-9);
  }
}

TEST(CubicSpline, ConvergesOnSmoothData) {
  std::vector<double> errors;
  for (int n : {50, 100, 200}) {
    std::vector<double> t, y;
    for (int i = 0; i <= n; ++i) {
      t.push_back(1.0 * i / n);
      y.push_back(std::sin(3.0 * t.back()));
    }
    const CubicSpline s(t, y);
    double worst = 0.0;
    for (int k = 0; k <= 997; ++k) worst = std::max(worst, std::abs(s(k / 997.0).value - std::sin(3.0 * k / 997.0)));
    errors.push_back(worst);
  }
  EXPECT_LT(errors.back(), 1e-8);
  EXPECT_GT(std::log2(errors[1] / errors[2]), 3.5);
}

TEST(CubicSpline, RejectsTooFewOrUnorderedKnots) {
  EXPECT_THROW(CubicSpline({0, 1, 2}, {0, 1, 2}), DomainError);
  EXPECT_THROW(CubicSpline({0, 2, 1, 3}, {0, 1, 2, 3}), DomainError);
}

TEST(QuinticHermite, MatchesDataAndIntegratesExactly) {
  std::vector<double> t{0.0, 0.4, 1.0, 1.3}, y, dy, ddy;
  auto f = [](double x) { return x * x * x * x * x - 2.0 * x * x; };
  for (double x : t) {
    y.push_back(f(x));
    dy.push_back(5.0 * x * x * x * x - 4.0 * x);
    ddy.push_back(20.0 * x * x * x - 4.0);
  }
  const QuinticHermite q(t, y, dy, ddy);
  for (double x = 0.0; x <= 1.3; x += 0.05) {
    EXPECT_NEAR(q(x).value, f(x), 1e-12);
    EXPECT_NEAR(q.integral(x), std::pow(x, 6) / 6.0 - 2.0 * x * x * x / 3.0, 1e-12);
  }
}
