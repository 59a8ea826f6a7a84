#pragma once

/**
 * Euler-Lagrange residual, Euler-Lagrange vector and path deviation.
 *
 * For a geometric Lagrangian the residual R = ∂L/∂x − d/dt ∂L/∂ẋ is always
 * orthogonal to ẋ, hence spacelike or zero, and vanishes exactly on geodesics.
 * The deviation of a path is ∫‖R‖dt; dividing R by ‖ẋ‖ gives a vector that no
 * longer depends on the parametrization.
 */

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "geolag/errors.hpp"
#include "geolag/lagrangian.hpp"
#include "geolag/minkowski.hpp"
#include "geolag/quadrature.hpp"
#include "geolag/worldline.hpp"

namespace geolag {

inline constexpr double kDefaultGeoTol = 1e-8;

enum class ResidualMethod {
  /// d/dt ∂L/∂ẋ by the chain rule through ẋ and ẍ. Pure free-particle
  /// Lagrangians use the closed curvature form directly.
  Analytic,
  /// Central differences of the momentum map along the path, step cbrt(ε)·(b − a).
  FiniteDifference,
};

namespace detail {

/// Closed-form residual for L = −mc‖ẋ‖: R = mc·((ẋ·ẋ)ẍ − (ẋ·ẍ)ẋ)/(ẋ·ẋ)^{3/2}.
inline FourVector free_particle_residual(double mc, const FourVector& v, const FourVector& a) {
  const double vv = dot(v, v);
  const double va = dot(v, a);
  return (mc / (vv * std::sqrt(vv))) * (vv * a - va * v);
}

/// d/dt of the momentum map u ↦ ∂L/∂ẋ(x(u), ẋ(u)) within one segment.
inline FourVector momentum_rate(const LagrangianSpec& L, const Segment& s, double t) {
  auto momentum = [&](double u) {
    const Kinematics k = s.probe(u);
    return L.gradients(k.x, k.v).d_v;
  };
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (s.end() - s.begin());
  if (t - h >= s.begin() && t + h <= s.end()) {
    return (momentum(t + h) - momentum(t - h)) / (2.0 * h);
  }
  // Second-order one-sided stencils at the segment ends.
  if (t - h < s.begin()) {
    return (-3.0 * momentum(t) + 4.0 * momentum(t + h) - momentum(t + 2.0 * h)) / (2.0 * h);
  }
  return (3.0 * momentum(t) - 4.0 * momentum(t - h) + momentum(t - 2.0 * h)) / (2.0 * h);
}

inline FourVector residual_on_segment(const LagrangianSpec& L, const Segment& s, double t, ResidualMethod method) {
  const Kinematics k = s.probe(t);
  require_future_timelike(k.v, "velocity");
  if (method == ResidualMethod::FiniteDifference) return L.gradients(k.x, k.v).d_x - momentum_rate(L, s, t);
  const double mass = L.pure_free_particle_mass();
  if (mass > 0.0) return free_particle_residual(mass * L.c(), k.v, k.a);
  return L.gradients(k.x, k.v).d_x - L.momentum_rate(k.x, k.v, k.a);
}

}  // namespace detail

/// R(t) = ∂L/∂x − d/dt ∂L/∂ẋ at parameter t.
inline FourVector el_residual(const LagrangianSpec& L, const Worldline& w, double t,
                              ResidualMethod method = ResidualMethod::Analytic) {
  const Segment& s = w.segments()[w.segment_index(t)];
  return detail::residual_on_segment(L, s, t, method);
}

/// R(t)/‖ẋ(t)‖, invariant under reparametrization.
inline FourVector el_vector(const LagrangianSpec& L, const Worldline& w, double t,
                            ResidualMethod method = ResidualMethod::Analytic) {
  return el_residual(L, w, t, method) / norm(w.probe(t).v);
}

/// γ = √|((ẋ·ẍ)² − (ẋ·ẋ)(ẍ·ẍ)) / (ẋ·ẋ)³|, the curvature of a timelike path, evaluated as ‖ẍ⊥‖/(ẋ·ẋ).
inline double curvature(const Worldline& w, double t) {
  const Kinematics k = w.probe(t);
  const double vv = dot(k.v, k.v);
  const double va = dot(k.v, k.a);
  const FourVector a_perp = k.a - (va / vv) * k.v;
  return std::sqrt(std::abs(dot(a_perp, a_perp))) / std::abs(vv);
}

/// mc × rapidity between the initial and final directions of motion.
inline double deviation_lower_bound(const Worldline& w, double m, double c) {
  return m * c * rapidity_between(w.probe(w.begin()).v, w.probe(w.end()).v);
}

struct DeviationReport {
  double total = 0.0;
  std::vector<double> per_segment;
  double error_estimate = 0.0;
  bool geodesic = false;
  double geo_tol = kDefaultGeoTol;
  /// Largest pointwise relative gap between the dt-form and ds-form integrands.
  double form_mismatch = 0.0;
};

// ‖ẋ‖ below this fraction of its Euclidean size is treated as degenerating to lightlike.
inline constexpr double kLightlikeAbort = 1e-9;

/**
 * ∫‖R‖dt over every segment. The ds-form integrand ‖R/‖ẋ‖‖·‖ẋ‖ is evaluated
 * alongside and must agree pointwise; any disagreement beyond rounding is a
 * numerics failure.
 */
inline DeviationReport deviation(const LagrangianSpec& L, const Worldline& w, const QuadratureConfig& quad = {},
                                 double geo_tol = kDefaultGeoTol, ResidualMethod method = ResidualMethod::Analytic) {
  if (!(geo_tol >= 0.0)) throw DomainError("geo_tol must be >= 0");
  DeviationReport report;
  report.geo_tol = geo_tol;
  for (const auto& s : w.segments()) {
    double mismatch = 0.0;
    auto integrand = [&](double t) {
      const Kinematics k = s.probe(t);
      if (!(norm(k.v) >= kLightlikeAbort * euclidean_norm(k.v))) {
        throw NumericsError("deviation: velocity degenerates towards lightlike at t=" + std::to_string(t));
      }
      const FourVector r = detail::residual_on_segment(L, s, t, method);
      const double speed = norm(k.v);
      const double dt_form = norm(r);
      const double ds_form = norm(r / speed) * speed;
      const double gap = std::abs(dt_form - ds_form) / std::max(dt_form, std::numeric_limits<double>::min());
      if (dt_form > 0.0) mismatch = std::max(mismatch, gap);
      return dt_form;
    };
    QuadratureResult r;
    try {
      r = integrate(integrand, s.breakpoints(), quad);
    } catch (const NumericsError& e) {
      throw NumericsError(e.what(), report.total, report.error_estimate);
    }
    if (!r.converged || !std::isfinite(r.value)) {
      throw NumericsError("deviation: quadrature did not converge on segment '" + s.label() + "'",
                          report.total + r.value, report.error_estimate + r.error_estimate);
    }
    if (mismatch > 1e-12) {
      throw NumericsError("deviation: dt-form and ds-form integrands disagree", report.total, report.error_estimate);
    }
    report.form_mismatch = std::max(report.form_mismatch, mismatch);
    r.value = std::max(r.value, 0.0);  // the Richardson step can undershoot a vanishing integrand
    report.per_segment.push_back(r.value);
    report.total += r.value;
    report.error_estimate += r.error_estimate;
  }
  report.geodesic = report.total <= geo_tol;
  return report;
}

}  // namespace geolag
