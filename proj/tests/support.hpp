#pragma once

// Random smooth paths, reparametrizations and Lagrangians shared by the unit and acceptance tests.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "geolag/lagrangian.hpp"
#include "geolag/scenarios.hpp"
#include "geolag/worldline.hpp"

namespace geolag::testkit {

/// v⁰ = 1.5 + 0.3 sin(ω₀t + φ₀), each spatial component a sum of three sines whose
/// amplitudes keep the spatial speed below 1.08 < v⁰. Position and acceleration in closed form.
inline Worldline random_smooth_path(std::mt19937_64& rng, std::size_t dim, double t0 = 0.0, double t1 = 1.0) {
  std::uniform_real_distribution<double> freq(0.5, 4.0), phase(0.0, 6.283185307179586), unit(-1.0, 1.0);
  struct Mode {
    double amp, omega, phase;
  };
  std::vector<std::vector<Mode>> modes(dim);
  modes[0].push_back({0.3, freq(rng), phase(rng)});
  const double budget = 0.9 * 1.2 / std::sqrt(static_cast<double>(dim - 1)) / 3.0;
  for (std::size_t i = 1; i < dim; ++i) {
    for (int k = 0; k < 3; ++k) modes[i].push_back({budget * unit(rng), freq(rng), phase(rng)});
  }
  const std::vector<double> origin = [&] {
    std::vector<double> o(dim);
    for (auto& c : o) c = unit(rng);
    return o;
  }();
  return Worldline(Segment::analytic(
      [=](double t) {
        Kinematics k{FourVector(dim), FourVector(dim), FourVector(dim)};
        k.x[0] = origin[0] + 1.5 * (t - t0);
        k.v[0] = 1.5;
        for (std::size_t i = 0; i < dim; ++i) {
          if (i > 0) k.x[i] = origin[i];
          for (const auto& m : modes[i]) {
            const double s = std::sin(m.omega * t + m.phase), c = std::cos(m.omega * t + m.phase);
            k.x[i] += -m.amp / m.omega * (c - std::cos(m.omega * t0 + m.phase));
            k.v[i] += m.amp * s;
            k.a[i] += m.amp * m.omega * c;
          }
        }
        return k;
      },
      t0, t1, "random"));
}

/// Cubic monotone map from a random parameter interval onto [a, b].
inline ReparamFn random_reparam(std::mt19937_64& rng, double a, double b) {
  std::uniform_real_distribution<double> w1(0.2, 1.0), w(0.0, 1.0), start(-2.0, 2.0), len(0.5, 3.0);
  const double alpha = start(rng);
  return ReparamFn::cubic(alpha, alpha + len(rng), a, b, w1(rng), w(rng), w(rng));
}

/// A smooth, non-constant vector potential on any dimension, differentiated by dual numbers.
inline VectorField test_vector_field() {
  return VectorField::autodiff([](const auto& x) {
    auto a = x;
    const std::size_t d = x.dim();
    for (std::size_t mu = 0; mu < d; ++mu) a[mu] = 0.3 * sin(x[(mu + 1) % d]) + 0.1 * x[mu] * x[0];
    return a;
  });
}

struct NamedLagrangian {
  std::string name;
  LagrangianSpec L;
};

/// Every built-in geometric Lagrangian usable in `dim` dimensions.
inline std::vector<NamedLagrangian> builtin_lagrangians(std::size_t dim) {
  std::vector<NamedLagrangian> out;
  out.push_back({"free_particle", LagrangianSpec::free_particle(1.3, 1.0)});
  out.push_back({"free_particle+vector_potential",
                 LagrangianSpec({terms::FreeParticle{1.0}, terms::VectorPotential{test_vector_field()}}, 1.0)});
  out.push_back({"vector_potential_constant",
                 LagrangianSpec({terms::FreeParticle{0.7},
                                 terms::VectorPotential{VectorField::constant(FourVector::basis(dim, 0))}},
                                1.0)});
  if (dim == 2) {
    out.push_back({"free_particle+static_potential",
                   LagrangianSpec({terms::FreeParticle{1.0},
                                   terms::StaticPotential1p1{Potential1D::autodiff([](const auto& x) { return 0.5 * x * x + 0.2 * cos(x); })}},
                                  1.0)});
  }
  return out;
}

/// Uniformly random future-timelike velocity with spatial speed below 0.95 and random scale.
inline FourVector random_timelike(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0), speed(0.0, 0.95), scale(0.1, 10.0);
  FourVector dir(dim), v(dim);
  double len = 0.0;
  while (len < 1e-3) {
    for (std::size_t k = 1; k < dim; ++k) dir[k] = unit(rng);
    len = euclidean_norm(dir);
  }
  const double s = scale(rng), b = speed(rng);
  v[0] = s;
  for (std::size_t k = 1; k < dim; ++k) v[k] = s * b * dir[k] / len;
  return v;
}

inline FourVector random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  FourVector x(dim);
  for (std::size_t k = 0; k < dim; ++k) x[k] = unit(rng);
  return x;
}

/// g(s) = Σ w_k s^k over degrees 1..5 with non-negative weights summing to 1: monotone from 0 to 1.
inline scenarios::VelocityProfile random_monotone_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<double> coeffs{0.0};
  double sum = 0.0;
  for (int k = 1; k <= 5; ++k) {
    coeffs.push_back(k == 1 ? 0.05 + w(rng) : w(rng));
    sum += coeffs.back();
  }
  for (auto& c : coeffs) c /= sum;
  return scenarios::VelocityProfile::polynomial(coeffs);
}

}  // namespace geolag::testkit
