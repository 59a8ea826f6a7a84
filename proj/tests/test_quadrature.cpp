#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "geolag/quadrature.hpp"

using namespace geolag;

namespace {

double boost_oracle(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-15);
}

QuadratureConfig with_rule(QuadratureRule rule) {
  QuadratureConfig q;
  q.rule = rule;
  return q;
}

}  // namespace

class QuadratureRules : public ::testing::TestWithParam<QuadratureRule> {};

TEST_P(QuadratureRules, MatchesIndependentOracle) {
  const QuadratureConfig q = with_rule(GetParam());
  const std::vector<std::pair<std::function<double(double)>, std::pair<double, double>>> cases = {
      {[](double t) { return 1.0 / std::cos(2.0 * t); }, {0.0, std::atan(0.6)}},
      {[](double t) { return std::sqrt(std::cos(2.0 * t)); }, {0.0, 0.5}},
      {[](double t) { return std::exp(-t * t) * std::sin(5.0 * t); }, {-1.0, 3.0}},
      {[](double t) { return 0.6 / std::pow(std::cosh(t) * std::cosh(t) - 0.36 * std::sinh(t) * std::sinh(t), 1.0); },
       {0.0, 5.0}},
  };
  for (const auto& [f, ab] : cases) {
    const auto r = integrate(f, ab.first, ab.second, q);
    const double oracle = boost_oracle(f, ab.first, ab.second);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, oracle, 1e-9);
    EXPECT_LE(std::abs(r.value - oracle), 10.0 * r.error_estimate + 1e-13);
  }
}

TEST_P(QuadratureRules, ExactOnPolynomials) {
  const auto r = integrate([](double t) { return 3.0 * t * t + 1.0; }, 0.0, 2.0, with_rule(GetParam()));
  EXPECT_NEAR(r.value, 10.0, 1e-13);
}

INSTANTIATE_TEST_SUITE_P(Rules, QuadratureRules,
                         ::testing::Values(QuadratureRule::AdaptiveSimpson, QuadratureRule::GaussKronrod15));

TEST(Quadrature, CrossRuleAgreementWithBoostKronrod) {
  auto f = [](double t) { return 1.0 / std::sqrt(1.0 + t * t * t * t); };
  const double gk = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 4.0, 15, 1e-14);
  EXPECT_NEAR(integrate(f, 0.0, 4.0).value, gk, 1e-9);
  EXPECT_NEAR(integrate(f, 0.0, 4.0, with_rule(QuadratureRule::GaussKronrod15)).value, gk, 1e-9);
}

TEST(Quadrature, NonConvergenceIsReportedNotThrown) {
  QuadratureConfig q;
  q.max_depth = 4;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-14;
  auto f = [](double t) { return 1.0 / std::sqrt(t); };
  const auto r = integrate(f, 1e-12, 1.0, q);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(integrate_or_throw(f, 1e-12, 1.0, q, "singular"), NumericsError);
}

TEST(Quadrature, RejectsBadConfig) {
  QuadratureConfig q;
  q.abs_tol = 0.0;
  EXPECT_THROW(q.validate(), DomainError);
}

TEST(Quadrature, PartitionSumsPieces) {
  auto f = [](double t) { return std::abs(t - 0.3); };
  const auto r = integrate(f, std::vector<double>{0.0, 0.3, 1.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.5 * 0.09 + 0.5 * 0.49, 1e-15);
  EXPECT_THROW(integrate(f, std::vector<double>{0.0, 0.5, 0.5, 1.0}), DomainError);
  EXPECT_THROW(integrate(f, std::vector<double>{0.0}), DomainError);
}

TEST(Quadrature, EvaluationBudgetStopsRefinement) {
  QuadratureConfig q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-300;
  q.max_evaluations = 1000;
  const auto r = integrate([](double t) { return std::sin(50.0 * t); }, 0.0, 1.0, q);
  EXPECT_FALSE(r.converged);
  EXPECT_LT(r.evaluations, 1200);
}

TEST(Quadrature, ErrorEstimateNeverBelowRoundoff) {
  const auto r = integrate([](double) { return 1.0; }, 0.0, 1.0);
  EXPECT_GT(r.error_estimate, 0.0);
  EXPECT_LT(r.error_estimate, 1e-12);
}
