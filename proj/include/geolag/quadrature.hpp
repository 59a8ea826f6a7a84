#pragma once

// Adaptive one-dimensional quadrature with error estimates.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "geolag/errors.hpp"

namespace geolag {

enum class QuadratureRule {
  /// Recursive Simpson bisection with Richardson extrapolation.
  AdaptiveSimpson,
  /// Recursive bisection driven by the Gauss 7 / Kronrod 15 pair.
  GaussKronrod15,
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 40;
  /// Integrand evaluations allowed before refinement stops and the result is flagged unconverged.
  long max_evaluations = 5'000'000;
  QuadratureRule rule = QuadratureRule::AdaptiveSimpson;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be > 0");
    if (max_depth < 1) throw DomainError("quadrature max_depth must be >= 1");
    if (max_evaluations < 15) throw DomainError("quadrature max_evaluations must be >= 15");
  }

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

namespace detail {

// Subdivide at least this deep so a lucky coarse estimate is never accepted.
inline constexpr int kMinDepth = 5;

// Accuracy no panel can beat in double precision.
inline double roundoff_floor(double panel) { return 50.0 * std::numeric_limits<double>::epsilon() * std::abs(panel); }

template <class F>
struct SimpsonIntegrator {
  const F& f;
  int max_depth;
  long budget;
  QuadratureResult out;

  double simpson(double a, double b, double fa, double fm, double fb) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  void step(double a, double b, double fa, double fm, double fb, double whole, double tol,
            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    const bool tiny = (b - a) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(m));
    const bool spent = out.evaluations >= budget;
    if ((depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) || depth >= max_depth || tiny || spent) {
      if (std::abs(delta) > 15.0 * tol && !tiny) out.converged = false;
      out.value += left + right + delta / 15.0;
      out.error_estimate += std::max(std::abs(delta) / 15.0, roundoff_floor(left + right));
      return;
    }
    step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

// Abscissae and weights of the 15-point Kronrod rule and its embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
double gauss_kronrod_panel(const F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double sum = f(c - dx) + f(c + dx);
    k15 += kWgk[j] * sum;
    if (j % 2 == 1) g7 += kWg[j / 2] * sum;
  }
  err = std::abs((k15 - g7) * h);
  return k15 * h;
}

template <class F>
struct KronrodIntegrator {
  const F& f;
  int max_depth;
  long budget;
  QuadratureResult out;

  void step(double a, double b, double tol, int depth) {
    double err = 0.0;
    const double v = gauss_kronrod_panel(f, a, b, err);
    out.evaluations += 15;
    if ((depth >= 1 && err <= tol) || depth >= max_depth || out.evaluations >= budget) {
      if (err > tol) out.converged = false;
      out.value += v;
      out.error_estimate += std::max(err, roundoff_floor(v));
      return;
    }
    const double m = 0.5 * (a + b);
    step(a, m, 0.5 * tol, depth + 1);
    step(m, b, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

/**
 * Integrate f over [a, b]. The requested accuracy is
 * max(abs_tol, rel_tol·|coarse estimate|), distributed over subintervals by halving.
 * Never throws on non-convergence; inspect `converged` or use integrate_or_throw.
 */
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!(a <= b)) throw DomainError("integrate: reversed interval");
  if (a == b) return {};
  if (cfg.rule == QuadratureRule::GaussKronrod15) {
    double err = 0.0;
    const double coarse = detail::gauss_kronrod_panel(f, a, b, err);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(coarse));
    detail::KronrodIntegrator<F> k{f, cfg.max_depth, cfg.max_evaluations, {}};
    k.out.evaluations = 15;
    k.step(a, b, tol, 0);
    return k.out;
  }
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  detail::SimpsonIntegrator<F> s{f, cfg.max_depth, cfg.max_evaluations, {}};
  s.out.evaluations = 3;
  const double whole = s.simpson(a, b, fa, fm, fb);
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
  s.step(a, b, fa, fm, fb, whole, tol, 0);
  return s.out;
}

/// Integrate over each piece of the increasing partition `breaks` and sum; abs_tol is shared in proportion to width.
template <class F>
QuadratureResult integrate(const F& f, const std::vector<double>& breaks, const QuadratureConfig& cfg = {}) {
  if (breaks.size() < 2) throw DomainError("integrate: partition needs at least two points");
  const double span = breaks.back() - breaks.front();
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) throw DomainError("integrate: partition must be increasing");
    QuadratureConfig piece = cfg;
    piece.abs_tol = cfg.abs_tol * (breaks[i + 1] - breaks[i]) / span;
    piece.max_evaluations = std::max(15L, cfg.max_evaluations - total.evaluations);
    const QuadratureResult r = integrate(f, breaks[i], breaks[i + 1], piece);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

template <class F>
QuadratureResult integrate_or_throw(const F& f, const std::vector<double>& breaks, const QuadratureConfig& cfg,
                                    const std::string& what) {
  QuadratureResult r = integrate(f, breaks, cfg);
  if (!r.converged || !std::isfinite(r.value)) {
    throw NumericsError(what + ": quadrature did not converge (estimate " + std::to_string(r.value) +
                            ", error bound " + std::to_string(r.error_estimate) + ")",
                        r.value, r.error_estimate);
  }
  return r;
}

template <class F>
QuadratureResult integrate_or_throw(const F& f, double a, double b, const QuadratureConfig& cfg,
                                    const std::string& what) {
  QuadratureResult r = integrate(f, a, b, cfg);
  if (!r.converged || !std::isfinite(r.value)) {
    throw NumericsError(what + ": quadrature did not converge (estimate " + std::to_string(r.value) +
                            ", error bound " + std::to_string(r.error_estimate) + ")",
                        r.value, r.error_estimate);
  }
  return r;
}

}  // namespace geolag
