#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "geolag/lagrangian.hpp"
#include "support.hpp"

using namespace geolag;

namespace {

LagrangianSpec with_potential(Potential1D V, double m = 1.0, double c = 1.0) {
  return LagrangianSpec({terms::FreeParticle{m}, terms::StaticPotential1p1{std::move(V)}}, c);
}

// ∂L/∂(component `mu` of `which`) by central differences, step cbrt(ε)(1 + |component|).
double central_partial(const LagrangianSpec& L, FourVector x, FourVector v, bool wrt_v, std::size_t mu) {
  FourVector& target = wrt_v ? v : x;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(target[mu]));
  const double base = target[mu];
  target[mu] = base + h;
  const double up = L.eval(x, v);
  target[mu] = base - h;
  const double down = L.eval(x, v);
  return (up - down) / (2.0 * h);
}

}  // namespace

TEST(Lagrangian, EvalExamples) {
  const FourVector x{0.3, -2.0};
  EXPECT_DOUBLE_EQ(LagrangianSpec::free_particle(1, 1).eval(x, FourVector{1, 0}), -1.0);
  EXPECT_DOUBLE_EQ(LagrangianSpec::free_particle(2, 1).eval(x, FourVector{2, 0}), -4.0);
  const auto L = with_potential(Potential1D::polynomial({0.0, 1.0}));
  EXPECT_DOUBLE_EQ(L.eval(FourVector{0, 3}, FourVector{1, 0}), -1.0 - 3.0);
}

TEST(Lagrangian, GradientExamples) {
  const auto fp = LagrangianSpec::free_particle(1, 1);
  auto g = fp.gradients(FourVector{0, 0}, FourVector{1, 0});
  EXPECT_EQ(g.d_v, (FourVector{-1, 0}));
  EXPECT_EQ(g.d_x, (FourVector{0, 0}));

  g = fp.gradients(FourVector{0, 0}, FourVector{std::cosh(1.0), std::sinh(1.0)});
  EXPECT_NEAR(g.d_v[0], -std::cosh(1.0), 1e-14);
  EXPECT_NEAR(g.d_v[1], -std::sinh(1.0), 1e-14);

  // V = ½x²: the raw partial ∂L/∂x¹ is −V′(2) = −2; the stored gradient has the index raised.
  const LagrangianSpec pot({terms::StaticPotential1p1{Potential1D::polynomial({0.0, 0.0, 0.5})}}, 1.0);
  g = pot.gradients(FourVector{0, 2}, FourVector{1, 0});
  EXPECT_EQ(lowered(g.d_x), (FourVector{0, -2}));
  EXPECT_EQ(g.d_v, (FourVector{-2, 0}));
}

TEST(Lagrangian, HomogeneityExamples) {
  const FourVector x{0.1, 0.2};
  for (const auto& [name, L] : testkit::builtin_lagrangians(2)) {
    EXPECT_EQ(homogeneity_residual(L, x, FourVector{1, 0.5}, 1.0), 0.0) << name;
  }
  EXPECT_LE(homogeneity_residual(LagrangianSpec::free_particle(), x, FourVector{1, 0.5}, 7.3), 1e-12);
  const LagrangianSpec a({terms::VectorPotential{VectorField::constant(FourVector{0.4, -1.1})}}, 1.0);
  EXPECT_LE(homogeneity_residual(a, x, FourVector{1, 0.5}, 2.0), 1e-12);
  EXPECT_THROW(homogeneity_residual(a, x, FourVector{1, 0.5}, 0.0), DomainError);
}

TEST(Lagrangian, HamiltonianExamples) {
  EXPECT_EQ(hamiltonian_residual(LagrangianSpec::free_particle(), FourVector{0, 0}, FourVector{1, 0}), 0.0);
  const LagrangianSpec fa({terms::FreeParticle{1.0}, terms::VectorPotential{VectorField::constant(FourVector{1, 0})}}, 1.0);
  EXPECT_LE(std::abs(hamiltonian_residual(fa, FourVector{0, 0}, FourVector{2, 1})), 1e-12);
  const LagrangianSpec v({terms::StaticPotential1p1{Potential1D::polynomial({0.0, 0.0, 1.0})}}, 1.0);
  EXPECT_LE(std::abs(hamiltonian_residual(v, FourVector{0, 1}, FourVector{3, 1})), 1e-12);
}

TEST(Lagrangian, QuadraticKineticIsNotHomogeneous) {
  const LagrangianSpec q({terms::QuadraticKinetic{1.0}}, 1.0);
  EXPECT_GT(homogeneity_residual(q, FourVector{0, 0}, FourVector{1, 0.2}, 2.0), 0.1);
  EXPECT_GT(std::abs(hamiltonian_residual(q, FourVector{0, 0}, FourVector{1, 0.2})), 0.1);
}

TEST(Lagrangian, Validation) {
  EXPECT_THROW(LagrangianSpec::free_particle(0.0), DomainError);
  EXPECT_THROW(LagrangianSpec::free_particle(1.0, -1.0), DomainError);
  const auto L = LagrangianSpec::free_particle();
  EXPECT_THROW(L.eval(FourVector{0, 0}, FourVector{0.5, 1}), CausalityError);
  EXPECT_THROW(L.eval(FourVector{0, 0}, FourVector{-1, 0}), CausalityError);
  EXPECT_THROW(L.eval(FourVector{0, 0}, FourVector{1, 0, 0, 0}), DimensionError);
  const auto P = with_potential(Potential1D::polynomial({1.0}));
  EXPECT_THROW(P.eval(FourVector(4), FourVector::basis(4, 0)), DimensionError);
}

TEST(LagrangianProperty, EulerTheoremOnRandomSamples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lambda(1e-3, 10.0);
  for (std::size_t dim : {2u, 4u}) {
    for (const auto& [name, L] : testkit::builtin_lagrangians(dim)) {
      for (int i = 0; i < 1000; ++i) {
        const FourVector x = testkit::random_point(rng, dim);
        const FourVector v = testkit::random_timelike(rng, dim);
        const double weight = 1.0 + std::abs(L.eval(x, v));
        EXPECT_LE(homogeneity_residual(L, x, v, lambda(rng)), 1e-10 * weight) << name;
        EXPECT_LE(std::abs(hamiltonian_residual(L, x, v)), 1e-10 * weight) << name;
      }
    }
  }
}

TEST(LagrangianProperty, GradientsMatchCentralDifferences) {
  std::mt19937_64 rng(12);
  for (std::size_t dim : {2u, 4u}) {
    auto Ls = testkit::builtin_lagrangians(dim);
    Ls.push_back({"quadratic_kinetic", LagrangianSpec({terms::QuadraticKinetic{0.7}}, 1.0)});
    for (const auto& [name, L] : Ls) {
      for (int i = 0; i < 200; ++i) {
        const FourVector x = testkit::random_point(rng, dim);
        FourVector v = testkit::random_timelike(rng, dim);
        v = v / v[0];  // keep velocities O(1) so the fixed FD step stays well resolved
        const Gradients g = L.gradients(x, v);
        const FourVector dx = lowered(g.d_x), dv = lowered(g.d_v);
        for (std::size_t mu = 0; mu < dim; ++mu) {
          const double fx = central_partial(L, x, v, false, mu);
          const double fv = central_partial(L, x, v, true, mu);
          EXPECT_LE(std::abs(dx[mu] - fx), 1e-6 * std::max(1.0, std::abs(fx))) << name << " d_x[" << mu << "]";
          EXPECT_LE(std::abs(dv[mu] - fv), 1e-6 * std::max(1.0, std::abs(fv))) << name << " d_v[" << mu << "]";
        }
      }
    }
  }
}

TEST(LagrangianProperty, FactorsByCoordinateTimeRate) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0), tp(0.1, 5.0), speed(-0.95, 0.95);
  const Potential1D V = Potential1D::polynomial({0.3, -0.2, 0.5, 0.1});
  for (double c : {1.0, 3.0}) {
    const auto L = with_potential(V, 1.7, c);
    for (int i = 0; i < 1000; ++i) {
      const double t_prime = tp(rng);
      const double x_prime = speed(rng) * c * t_prime;
      const double x = u(rng);
      const FourVector pos{u(rng), x}, vel{c * t_prime, x_prime};
      const double expected =
          t_prime * (-1.7 * c * c * std::sqrt(1.0 - (x_prime / t_prime) * (x_prime / t_prime) / (c * c)) - V(x));
      EXPECT_NEAR(L.eval(pos, vel), expected, 1e-12 * std::abs(expected));
    }
  }
}

TEST(Lagrangian, MomentumRateMatchesDifferencedGradients) {
  std::mt19937_64 rng(14);
  for (std::size_t dim : {2u, 4u}) {
    for (const auto& [name, L] : testkit::builtin_lagrangians(dim)) {
      const Worldline w = testkit::random_smooth_path(rng, dim);
      for (double t : {0.2, 0.5, 0.8}) {
        const auto k = w.probe(t);
        const double h = 1e-5;
        const auto up = w.probe(t + h), down = w.probe(t - h);
        const FourVector fd = (L.gradients(up.x, up.v).d_v - L.gradients(down.x, down.v).d_v) / (2.0 * h);
        const FourVector rate = L.momentum_rate(k.x, k.v, k.a);
        for (std::size_t mu = 0; mu < dim; ++mu) EXPECT_NEAR(rate[mu], fd[mu], 1e-7) << name;
      }
    }
  }
}

TEST(Potential1D, AutodiffAndAnalyticAgree) {
  const auto ad = Potential1D::autodiff([](const auto& x) { return x * x * x - 2.0 * exp(x); });
  const auto an = Potential1D::analytic([](double x) { return x * x * x - 2.0 * std::exp(x); },
                                        [](double x) { return 3.0 * x * x - 2.0 * std::exp(x); });
  for (double x : {-1.0, 0.0, 0.7, 2.0}) {
    EXPECT_NEAR(ad(x), an(x), 1e-14);
    EXPECT_NEAR(ad.derivative(x), an.derivative(x), 1e-13);
    EXPECT_NEAR(ad.second_derivative(x), 6.0 * x - 2.0 * std::exp(x), 1e-12);
    EXPECT_NEAR(an.second_derivative(x), 6.0 * x - 2.0 * std::exp(x), 1e-5);
  }
}
