#pragma once

// Prebuilt constructions: velocity-change paths, the twin paradox, and an
// equation-of-motion integrator used as an independent geodesic oracle.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "geolag/deviation.hpp"
#include "geolag/errors.hpp"
#include "geolag/lagrangian.hpp"
#include "geolag/minkowski.hpp"
#include "geolag/polynomial.hpp"
#include "geolag/quadrature.hpp"
#include "geolag/worldline.hpp"

namespace geolag::scenarios {

/// Shape g of a velocity ramp ẋ = c·e₀ + v·g(t)·e₁ on t ∈ [0, 1]; g rises from 0 to 1.
struct VelocityProfile {
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> antiderivative;  ///< ∫₀ᵗ g

  static VelocityProfile polynomial(std::vector<double> coefficients) {
    Polynomial p(std::move(coefficients));
    Polynomial dp = p.derivative();
    Polynomial ip = p.antiderivative();
    return {[p](double t) { return p(t); }, [dp](double t) { return dp(t); }, [ip](double t) { return ip(t); }};
  }

  static VelocityProfile linear() { return polynomial({0.0, 1.0}); }
};

enum class ProfileKind { CircularArc, HyperbolicBoost, CustomMonotone };

struct VelocityChangePath {
  ProfileKind kind = ProfileKind::CircularArc;
  double v_over_c = 0.5;
  double c = 1.0;
  double boost_T = 5.0;      ///< truncation of the hyperbolic boost's infinite domain
  VelocityProfile profile;   ///< CustomMonotone only
};

inline void require_subluminal(double beta, const char* what) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError(std::string(what) + ": v/c must lie in (0, 1)");
}

/// A path whose direction of motion turns from e₀ to (e₀ + (v/c)e₁)/‖·‖, starting at the origin.
inline Worldline build_velocity_change(const VelocityChangePath& p) {
  require_subluminal(p.v_over_c, "build_velocity_change");
  const double beta = p.v_over_c;
  switch (p.kind) {
    case ProfileKind::CircularArc:
      // Mirror image of sin t·e₀ + cos t·e₁ so the final velocity points along +e₁.
      return Worldline(Segment::analytic(
          [](double t) {
            const double s = std::sin(t), c = std::cos(t);
            return Kinematics{{s, 1.0 - c}, {c, s}, {-s, c}};
          },
          0.0, std::atan(beta), "circular_arc"));
    case ProfileKind::HyperbolicBoost: {
      if (!(p.boost_T > 0.0)) throw DomainError("hyperbolic boost truncation T must be > 0");
      const double c = p.c;
      const double v = beta * c;
      return Worldline(Segment::analytic(
          [c, v](double t) {
            const double sh = std::sinh(t), ch = std::cosh(t);
            return Kinematics{{c * sh, v * (ch - 1.0)}, {c * ch, v * sh}, {c * sh, v * ch}};
          },
          0.0, p.boost_T, "hyperbolic_boost"));
    }
    case ProfileKind::CustomMonotone: {
      const VelocityProfile& f = p.profile;
      if (!f.g || !f.dg || !f.antiderivative) throw DomainError("custom profile is incomplete");
      if (std::abs(f.g(0.0)) > 1e-12 || std::abs(f.g(1.0) - 1.0) > 1e-12) {
        throw DomainError("custom profile must rise from g(0) = 0 to g(1) = 1");
      }
      for (int i = 0; i <= 1000; ++i) {
        if (f.dg(i / 1000.0) < 0.0) throw DomainError("custom profile must be non-decreasing");
      }
      const double c = p.c;
      return Worldline(Segment::analytic(
          [f, beta, c](double t) {
            return Kinematics{{c * t, c * beta * f.antiderivative(t)}, {c, c * beta * f.g(t)}, {0.0, c * beta * f.dg(t)}};
          },
          0.0, 1.0, "custom_monotone"));
    }
  }
  throw DomainError("unknown profile");
}

/// mc·argtanh(Δv/c): the deviation any monotone change of velocity by Δv costs.
inline double delta_v_deviation(double dv_over_c, double m, double c) {
  if (!(dv_over_c >= 0.0 && dv_over_c < 1.0)) throw DomainError("delta_v_deviation: need 0 <= dv/c < 1");
  return m * c * std::atanh(dv_over_c);
}

/// Deviation the hyperbolic boost would still accrue beyond its truncation at T.
inline double boost_tail_correction(double v_over_c, double T, double m, double c) {
  return m * c * (std::atanh(v_over_c) - std::atanh(v_over_c * std::tanh(T)));
}

struct TwinScenario {
  double v_over_c = 0.6;
  double m = 1.0;
  double c = 1.0;
  /// c²/(proper acceleration): radius of each hyperbolic arc.
  double accel_radius = 1.0;
  /// Proper time spent coasting outbound and again inbound.
  double coast = 0.0;

  void validate() const {
    require_subluminal(v_over_c, "twin scenario");
    if (!(m > 0.0)) throw DomainError("twin scenario: m must be > 0");
    if (!(c > 0.0)) throw DomainError("twin scenario: c must be > 0");
    if (!(accel_radius > 0.0)) throw DomainError("twin scenario: accel_radius must be > 0");
    if (!(coast >= 0.0)) throw DomainError("twin scenario: coast must be >= 0");
  }

  friend bool operator==(const TwinScenario&, const TwinScenario&) = default;
};

struct TwinWorldlines {
  Worldline traveler;
  Worldline homebody;
  /// Segment indices of the traveler's three acceleration phases.
  std::array<std::size_t, 3> phase_segments;
};

namespace detail {

// Hyperbolic arc of radius rho starting at `origin` with rapidity theta0, turning
// with sign `sense` through `sweep` radians of rapidity. Parameter = rapidity swept.
inline Worldline hyperbolic_arc(const FourVector& origin, double theta0, double sense, double rho, double sweep,
                                std::string label) {
  return Worldline(Segment::analytic(
      [=](double xi) {
        const double th = theta0 + sense * xi;
        const double ch = std::cosh(th), sh = std::sinh(th);
        return Kinematics{origin + FourVector{rho * sense * (sh - std::sinh(theta0)), rho * sense * (ch - std::cosh(theta0))},
                          FourVector{rho * ch, rho * sh}, FourVector{rho * sense * sh, rho * sense * ch}};
      },
      0.0, sweep, std::move(label)));
}

inline Worldline coast_leg(const FourVector& origin, double theta, double duration, std::string label) {
  const FourVector u = boosted_unit(2, theta);
  return Worldline(Segment::analytic([=](double tau) { return Kinematics{origin + tau * u, u, FourVector(2)}; }, 0.0,
                                     duration, std::move(label)));
}

inline FourVector end_position(const Worldline& w) { return w.segments().back().probe(w.end()).x; }

}  // namespace detail

/**
 * Traveler: accelerate out to rapidity φ = argtanh(v/c), turn through 2φ,
 * brake through φ, with optional coasting legs in between. Homebody: the
 * straight segment between the same two events.
 */
inline TwinWorldlines build_twin(const TwinScenario& s) {
  s.validate();
  const double phi = std::atanh(s.v_over_c);
  const double rho = s.accel_radius;

  std::vector<Worldline> parts;
  std::array<std::size_t, 3> phases{};
  FourVector at{0.0, 0.0};
  auto push = [&](Worldline w) {
    at = detail::end_position(w);
    parts.push_back(std::move(w));
  };

  phases[0] = parts.size();
  push(detail::hyperbolic_arc(at, 0.0, +1.0, rho, phi, "outbound acceleration"));
  if (s.coast > 0.0) push(detail::coast_leg(at, phi, s.coast, "outbound coast"));
  phases[1] = parts.size();
  push(detail::hyperbolic_arc(at, phi, -1.0, rho, 2.0 * phi, "turnaround"));
  if (s.coast > 0.0) push(detail::coast_leg(at, -phi, s.coast, "inbound coast"));
  phases[2] = parts.size();
  push(detail::hyperbolic_arc(at, -phi, +1.0, rho, phi, "braking"));

  Worldline traveler = concat(parts);
  const FourVector arrival = detail::end_position(traveler);
  if (std::abs(arrival[1]) > kDefaultTolJoin) {
    throw JoinError(JoinKind::Position, "twin traveler does not return home");
  }
  Worldline homebody = worldlines::straight(FourVector{0.0, 0.0}, FourVector{1.0, 0.0}, 0.0, arrival[0]);
  return {std::move(traveler), std::move(homebody), phases};
}

struct TwinReport {
  TwinScenario scenario;
  DeviationReport traveler_deviation;
  DeviationReport homebody_deviation;
  std::array<double, 3> phase_deviation{};
  /// 4mc·argtanh(v/c)
  double expected_traveler_deviation = 0.0;
  double traveler_lower_bound = 0.0;
  ProperLength traveler_proper;
  ProperLength homebody_proper;
  /// The traveler's path deviates from a geodesic while the homebody's does not.
  bool asymmetric = false;
};

inline TwinReport twin_report(const TwinScenario& s, const QuadratureConfig& quad = {}, double geo_tol = kDefaultGeoTol) {
  const TwinWorldlines w = build_twin(s);
  const LagrangianSpec L = LagrangianSpec::free_particle(s.m, s.c);
  TwinReport r;
  r.scenario = s;
  r.traveler_deviation = deviation(L, w.traveler, quad, geo_tol);
  r.homebody_deviation = deviation(L, w.homebody, quad, geo_tol);
  for (std::size_t i = 0; i < 3; ++i) r.phase_deviation[i] = r.traveler_deviation.per_segment[w.phase_segments[i]];
  r.expected_traveler_deviation = 4.0 * delta_v_deviation(s.v_over_c, s.m, s.c);
  r.traveler_lower_bound = deviation_lower_bound(w.traveler, s.m, s.c);
  r.traveler_proper = proper_length(w.traveler, quad, s.c);
  r.homebody_proper = proper_length(w.homebody, quad, s.c);
  r.asymmetric = !r.traveler_deviation.geodesic && r.homebody_deviation.geodesic;
  return r;
}

/**
 * Integrate d/dt(γmv) = −V′(x) with classical RK4 in the momentum p = γmv,
 * starting from x(t0) = x0, ẋ(t0) = v0. The result is parametrized by
 * coordinate time with x⁰ = ct. Velocity between steps is the quintic Hermite
 * interpolant of the integrator's velocity, acceleration and jerk; position is
 * its integral. Interpolating positions instead would pair the positions with
 * velocities that disagree at O(h⁴), and the interpolant's bending to absorb
 * that shows up as an O(h³) residual.
 */
inline Worldline integrate_eom_1p1(const Potential1D& V, double x0, double v0, double m, double c, double t0, double t1,
                                   int steps) {
  if (!(m > 0.0) || !(c > 0.0)) throw DomainError("integrate_eom_1p1: m and c must be > 0");
  if (!(std::abs(v0) < c)) throw DomainError("integrate_eom_1p1: |v0| must be below c");
  if (!(t1 > t0)) throw DomainError("integrate_eom_1p1: need t1 > t0");
  if (steps < 1) throw DomainError("integrate_eom_1p1: steps must be >= 1");

  const double mc = m * c;
  auto gamma_of = [&](double p) { return std::sqrt(1.0 + (p / mc) * (p / mc)); };
  auto speed = [&](double p) { return p / (m * gamma_of(p)); };

  const double h = (t1 - t0) / steps;
  double x = x0;
  double p = m * v0 / std::sqrt(1.0 - (v0 / c) * (v0 / c));
  std::vector<double> ts;
  std::vector<FourVector> vs, as, js;
  auto emit = [&](double t) {
    const double v = speed(p);
    if (!std::isfinite(x) || !std::isfinite(v) || !(std::abs(v) < c)) {
      throw NumericsError("integrate_eom_1p1: left the timelike regime at t=" + std::to_string(t));
    }
    // a = F/(mγ³); ȧ = F′v/(mγ³) − 3aγ̇/γ with γ̇ = γ³va/c².
    const double g = gamma_of(p);
    const double force = -V.derivative(x);
    const double a = force / (m * g * g * g);
    const double gdot = g * g * g * v * a / (c * c);
    const double jerk = -V.second_derivative(x) * v / (m * g * g * g) - 3.0 * a * gdot / g;
    ts.push_back(t);
    vs.push_back(FourVector{c, v});
    as.push_back(FourVector{0.0, a});
    js.push_back(FourVector{0.0, jerk});
  };

  emit(t0);
  for (int i = 0; i < steps; ++i) {
    const double k1x = speed(p), k1p = -V.derivative(x);
    const double k2x = speed(p + 0.5 * h * k1p), k2p = -V.derivative(x + 0.5 * h * k1x);
    const double k3x = speed(p + 0.5 * h * k2p), k3p = -V.derivative(x + 0.5 * h * k2x);
    const double k4x = speed(p + h * k3p), k4p = -V.derivative(x + h * k3x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    emit(i + 1 == steps ? t1 : t0 + (i + 1) * h);
  }
  return Worldline(Segment::sampled_velocity(ts, FourVector{c * t0, x0}, vs, as, js, "eom_1p1"));
}

/// FreeParticle + StaticPotential1p1: the Lagrangian whose geodesics integrate_eom_1p1 traces.
inline LagrangianSpec potential_lagrangian_1p1(const Potential1D& V, double m, double c) {
  return LagrangianSpec({terms::FreeParticle{m}, terms::StaticPotential1p1{V}}, c);
}

}  // namespace geolag::scenarios
