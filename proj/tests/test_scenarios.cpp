#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "geolag/deviation.hpp"
#include "geolag/scenarios.hpp"
#include "support.hpp"

using namespace geolag;
using namespace geolag::scenarios;

namespace {

double final_ratio(const Worldline& w) {
  const FourVector v = w.probe(w.end()).v;
  return v[1] / v[0];
}

VelocityChangePath path(ProfileKind kind, double beta, double c = 1.0) {
  VelocityChangePath p;
  p.kind = kind;
  p.v_over_c = beta;
  p.c = c;
  p.profile = VelocityProfile::linear();
  return p;
}

}  // namespace

TEST(Scenarios, VelocityChangeExamples) {
  const auto arc = build_velocity_change(path(ProfileKind::CircularArc, 0.6));
  EXPECT_NEAR(arc.end(), 0.5404195002705842, 1e-15);
  EXPECT_NEAR(final_ratio(arc), 0.6, 1e-15);

  const auto boost = build_velocity_change(path(ProfileKind::HyperbolicBoost, 0.6));
  EXPECT_NEAR(final_ratio(boost), 0.6 * std::tanh(5.0), 1e-15);
  EXPECT_NEAR(final_ratio(boost), 0.5999455, 1e-7);

  const auto lin = build_velocity_change(path(ProfileKind::CustomMonotone, 0.6));
  EXPECT_NEAR(deviation(LagrangianSpec::free_particle(), lin).total, std::atanh(0.6), 1e-8);
}

TEST(Scenarios, VelocityChangeStartsAtRestAtOrigin) {
  for (auto kind : {ProfileKind::CircularArc, ProfileKind::HyperbolicBoost, ProfileKind::CustomMonotone}) {
    const auto w = build_velocity_change(path(kind, 0.4, 2.0));
    const auto k = w.probe(w.begin());
    EXPECT_EQ(k.x, (FourVector{0, 0}));
    EXPECT_NEAR(k.v[1], 0.0, 1e-15);
  }
}

TEST(Scenarios, VelocityChangeValidation) {
  EXPECT_THROW(build_velocity_change(path(ProfileKind::CircularArc, 1.0)), DomainError);
  EXPECT_THROW(build_velocity_change(path(ProfileKind::CircularArc, 0.0)), DomainError);
  auto p = path(ProfileKind::CustomMonotone, 0.5);
  p.profile = VelocityProfile::polynomial({0.0, 3.0, -2.0});  // overshoots 1, then falls back
  EXPECT_THROW(build_velocity_change(p), DomainError);
  p.profile = VelocityProfile::polynomial({0.0, -1.0, 2.0});  // g(1) = 1 but decreasing near 0
  EXPECT_THROW(build_velocity_change(p), DomainError);
}

TEST(Scenarios, DeltaVExamples) {
  EXPECT_EQ(delta_v_deviation(0.0, 1, 1), 0.0);
  EXPECT_NEAR(delta_v_deviation(0.6, 1, 1), 0.6931471805599453, 1e-15);
  EXPECT_NEAR(delta_v_deviation(std::tanh(1.0), 1, 1), 1.0, 1e-15);
  EXPECT_NEAR(delta_v_deviation(0.6, 2, 3), 6.0 * std::log(2.0), 1e-14);
  EXPECT_THROW(delta_v_deviation(1.0, 1, 1), DomainError);
}

TEST(Scenarios, TwinExamples) {
  TwinScenario th1;
  th1.v_over_c = std::tanh(1.0);
  EXPECT_NEAR(twin_report(th1).traveler_deviation.total, 4.0, 1e-8);

  const auto r = twin_report({});
  EXPECT_NEAR(r.traveler_deviation.total, 4.0 * std::log(2.0), 1e-8);
  EXPECT_NEAR(r.phase_deviation[0], std::log(2.0), 1e-9);
  EXPECT_NEAR(r.phase_deviation[1], 2.0 * std::log(2.0), 1e-9);
  EXPECT_NEAR(r.phase_deviation[2], std::log(2.0), 1e-9);
  EXPECT_LE(r.homebody_deviation.total, 1e-10);
  EXPECT_LT(r.traveler_proper.proper_time, r.homebody_proper.proper_time);
  EXPECT_TRUE(r.asymmetric);
  EXPECT_NEAR(r.expected_traveler_deviation, 4.0 * std::log(2.0), 1e-15);
}

TEST(Scenarios, TwinGeometryFollowsHyperbolae) {
  const auto tw = build_twin({});
  const auto& first = tw.traveler.segments().front();
  for (double xi : {0.0, 0.2, 0.5}) {
    const auto k = first.probe(xi);
    EXPECT_NEAR(k.x[0], std::sinh(xi), 1e-15);
    EXPECT_NEAR(k.x[1], std::cosh(xi) - 1.0, 1e-15);
  }
  const auto home = tw.traveler.probe(tw.traveler.end()).x;
  EXPECT_NEAR(home[1], 0.0, 1e-12);
  EXPECT_EQ(tw.homebody.probe(tw.homebody.end()).x[0], home[0]);
}

TEST(Scenarios, TwinWithCoastingAndUnits) {
  TwinScenario s;
  s.v_over_c = 0.8;
  s.m = 2.0;
  s.c = 3.0;
  s.accel_radius = 5.0;
  s.coast = 1.5;
  const auto r = twin_report(s);
  EXPECT_NEAR(r.traveler_deviation.total, 4.0 * 2.0 * 3.0 * std::atanh(0.8), 1e-7);
  EXPECT_EQ(r.traveler_deviation.per_segment.size(), 5u);
  EXPECT_LE(r.traveler_deviation.per_segment[1], 1e-12);
  EXPECT_LT(r.traveler_proper.proper_time, r.homebody_proper.proper_time);
}

TEST(Scenarios, TwinSlowLimit) {
  TwinScenario s;
  s.v_over_c = 1e-4;
  const auto r = twin_report(s);
  EXPECT_LT(r.traveler_deviation.total, 1e-3);
  EXPECT_NEAR(r.traveler_proper.proper_time / r.homebody_proper.proper_time, 1.0, 1e-7);
}

TEST(Scenarios, TwinReportInvariantUnderTravelerReparametrization) {
  std::mt19937_64 rng(41);
  const auto tw = build_twin({});
  const auto L = LagrangianSpec::free_particle();
  const auto base = deviation(L, tw.traveler);
  const auto base_len = proper_length(tw.traveler);
  for (int i = 0; i < 10; ++i) {
    const auto r = reparametrize(tw.traveler, testkit::random_reparam(rng, tw.traveler.begin(), tw.traveler.end()));
    const auto d = deviation(L, r);
    EXPECT_NEAR(d.total, base.total, 1e-7);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(d.per_segment[k], base.per_segment[k], 1e-7);
    EXPECT_NEAR(proper_length(r).length, base_len.length, 1e-7);
  }
}

TEST(Scenarios, TwinValidation) {
  TwinScenario s;
  s.v_over_c = 1.0;
  EXPECT_THROW(build_twin(s), DomainError);
  s = {};
  s.accel_radius = 0.0;
  EXPECT_THROW(build_twin(s), DomainError);
}

TEST(ScenariosProperty, VelocityChangeDeviationIsPathIndependent) {
  std::mt19937_64 rng(42);
  const auto L = LagrangianSpec::free_particle();
  for (double beta : {0.2, 0.6, 0.95}) {
    const double expected = delta_v_deviation(beta, 1, 1);
    EXPECT_NEAR(deviation(L, build_velocity_change(path(ProfileKind::CircularArc, beta))).total, expected, 1e-6);
    auto boost = path(ProfileKind::HyperbolicBoost, beta);
    boost.boost_T = 8.0;
    EXPECT_NEAR(deviation(L, build_velocity_change(boost)).total + boost_tail_correction(beta, 8.0, 1, 1), expected,
                1e-6);
    for (int i = 0; i < 5; ++i) {
      auto p = path(ProfileKind::CustomMonotone, beta);
      p.profile = testkit::random_monotone_profile(rng);
      EXPECT_NEAR(deviation(L, build_velocity_change(p)).total, expected, 1e-6);
    }
  }
}

TEST(Scenarios, EomFreeMotionIsStraight) {
  const auto w = integrate_eom_1p1(Potential1D::polynomial({0.0}), 0.0, 0.5, 1.0, 1.0, 0.0, 3.0, 100);
  const auto L = potential_lagrangian_1p1(Potential1D::polynomial({0.0}), 1.0, 1.0);
  EXPECT_LE(deviation(L, w).total, 1e-12);
  EXPECT_NEAR(w.probe(3.0).x[1], 1.5, 1e-13);
}

TEST(Scenarios, EomConstantForceFollowsHyperbolicMotion) {
  const double F = 1.0;
  const Potential1D V = Potential1D::polynomial({0.0, -F});
  const auto w = integrate_eom_1p1(V, 0.0, 0.0, 1.0, 1.0, 0.0, 2.0, 10000);
  for (double t : {0.5, 1.0, 1.7, 2.0}) {
    EXPECT_NEAR(w.probe(t).x[1], (std::sqrt(1.0 + F * F * t * t) - 1.0) / F, 1e-6);
    EXPECT_NEAR(w.probe(t).x[0], t, 1e-12);
  }
  EXPECT_LE(deviation(potential_lagrangian_1p1(V, 1.0, 1.0), w).total, 1e-6);
}

TEST(Scenarios, EomHarmonicOscillatorIsNearlyGeodesic) {
  const Potential1D V = Potential1D::polynomial({0.0, 0.0, 0.5});
  const auto w = integrate_eom_1p1(V, 1.0, 0.0, 1.0, 1.0, 0.0, 10.0, 10000);
  EXPECT_LE(deviation(potential_lagrangian_1p1(V, 1.0, 1.0), w).total, 1e-6);
}

TEST(ScenariosProperty, EomDeviationConvergesAtFourthOrder) {
  const Potential1D V = Potential1D::polynomial({0.0, 0.0, 0.5});
  const auto L = potential_lagrangian_1p1(V, 1.0, 1.0);
  QuadratureConfig tight;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-10;
  std::vector<double> devs;
  for (int steps : {250, 500, 1000}) devs.push_back(deviation(L, integrate_eom_1p1(V, 1.0, 0.0, 1.0, 1.0, 0.0, 10.0, steps), tight).total);
  for (std::size_t i = 1; i < devs.size(); ++i) {
    const double order = std::log2(devs[i - 1] / devs[i]);
    EXPECT_GT(order, 3.5);
    EXPECT_LT(order, 4.5);
  }
}

TEST(Scenarios, EomDeviationResolvesEveryStep) {
  // The residual vanishes at each integrator node, so the quadrature must look between them.
  const Potential1D V = Potential1D::polynomial({0.0, -1.0});
  const auto L = potential_lagrangian_1p1(V, 1.0, 1.0);
  QuadratureConfig tight;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-10;
  const double coarse = deviation(L, integrate_eom_1p1(V, 0.0, 0.0, 1.0, 1.0, 0.0, 2.0, 80), tight).total;
  const double fine = deviation(L, integrate_eom_1p1(V, 0.0, 0.0, 1.0, 1.0, 0.0, 2.0, 160), tight).total;
  EXPECT_GT(coarse / fine, 16.0);
  EXPECT_LT(coarse / fine, 64.0);
}

TEST(Scenarios, EomValidation) {
  const Potential1D V = Potential1D::polynomial({0.0});
  EXPECT_THROW(integrate_eom_1p1(V, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 10), DomainError);
  EXPECT_THROW(integrate_eom_1p1(V, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 10), DomainError);
  EXPECT_THROW(integrate_eom_1p1(V, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0), DomainError);
}
