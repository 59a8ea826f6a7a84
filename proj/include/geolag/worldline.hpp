#pragma once

/**
 * Parametrized timelike paths.
 *
 * A Worldline is an ordered list of segments over contiguous parameter ranges.
 * Each segment gives position, velocity and acceleration at a parameter value.
 * Construction validates the path: every probed velocity must be future-pointing
 * timelike, and consecutive segments must meet with continuous position and
 * continuous direction v/‖v‖. A kink would hide a rapidity jump that no
 * integral over the segments can see, so it is refused.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geolag/dual.hpp"
#include "geolag/errors.hpp"
#include "geolag/minkowski.hpp"
#include "geolag/quadrature.hpp"
#include "geolag/spline.hpp"

namespace geolag {

inline constexpr double kDefaultTolJoin = 1e-9;

struct Kinematics {
  FourVector x;  ///< position
  FourVector v;  ///< velocity dx/dt
  FourVector a;  ///< acceleration d²x/dt²
};

enum class SegmentKind { Analytic, Sampled };

class Segment {
 public:
  using ProbeFn = std::function<Kinematics(double)>;

  /// A segment given by closed-form position, velocity and acceleration on [a, b].
  static Segment analytic(ProbeFn probe, double a, double b, std::string label = "analytic") {
    return Segment(SegmentKind::Analytic, std::move(probe), a, b, std::move(label));
  }

  /// Cubic-spline (not-a-knot) interpolation of sampled positions; needs at least 4 knots.
  static Segment sampled(const std::vector<std::pair<double, FourVector>>& knots, std::string label = "sampled") {
    if (knots.size() < 4) throw DomainError("sampled segment needs at least 4 knots");
    const std::size_t dim = knots.front().second.dim();
    std::vector<double> t;
    std::vector<std::vector<double>> comp(dim);
    for (const auto& [tk, xk] : knots) {
      if (xk.dim() != dim) throw DimensionError("sampled segment: knots of mixed dimension");
      if (!is_finite(xk) || !std::isfinite(tk)) throw DomainError("sampled segment: non-finite knot");
      t.push_back(tk);
      for (std::size_t i = 0; i < dim; ++i) comp[i].push_back(xk[i]);
    }
    auto splines = std::make_shared<std::vector<CubicSpline>>();
    for (std::size_t i = 0; i < dim; ++i) splines->emplace_back(t, comp[i]);
    return Segment(SegmentKind::Sampled, spline_probe(splines, dim), t.front(), t.back(), std::move(label), t);
  }

  /**
   * Path rebuilt from sampled velocity data: velocity is the quintic Hermite
   * interpolant of (v, a, jerk) at the knots and position is x0 plus its exact
   * integral. Suited to integrator output, where velocities and their
   * derivatives are known more consistently than positions.
   */
  static Segment sampled_velocity(const std::vector<double>& t, const FourVector& x0, const std::vector<FourVector>& v,
                                  const std::vector<FourVector>& a, const std::vector<FourVector>& jerk,
                                  std::string label = "sampled") {
    if (t.size() < 2 || v.size() != t.size() || a.size() != t.size() || jerk.size() != t.size()) {
      throw DomainError("sampled_velocity: inconsistent knot arrays");
    }
    const std::size_t dim = x0.dim();
    auto interp = std::make_shared<std::vector<QuinticHermite>>();
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> y, dy, ddy;
      for (std::size_t k = 0; k < t.size(); ++k) {
        y.push_back(v[k][i]);
        dy.push_back(a[k][i]);
        ddy.push_back(jerk[k][i]);
      }
      interp->emplace_back(t, std::move(y), std::move(dy), std::move(ddy));
    }
    auto probe = [interp, x0, dim](double tt) {
      Kinematics k{x0, FourVector(dim), FourVector(dim)};
      for (std::size_t i = 0; i < dim; ++i) {
        const QuinticHermite& q = (*interp)[i];
        const SplineValue s = q(tt);
        k.x[i] += q.integral(tt);
        k.v[i] = s.value;
        k.a[i] = s.first;
      }
      return k;
    };
    return Segment(SegmentKind::Sampled, std::move(probe), t.front(), t.back(), std::move(label), t);
  }

  double begin() const noexcept { return a_; }
  double end() const noexcept { return b_; }
  SegmentKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

  /// Same kind and label with a new probe, domain and partition.
  Segment retraced(ProbeFn probe, double a, double b, std::vector<double> breaks) const {
    return Segment(kind_, std::move(probe), a, b, label_, std::move(breaks));
  }

  /// Partition of [begin, end] at the knots, where a sampled segment is only finitely smooth.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }

  /// Raw kinematics; no domain or causality checks.
  Kinematics probe(double t) const { return probe_(t); }

  /// Same curve with the parameter shifted so the segment starts at `new_begin`.
  Segment rebased(double new_begin) const {
    const double shift = a_ - new_begin;
    if (shift == 0.0) return *this;
    auto inner = probe_;
    std::vector<double> breaks = breaks_;
    for (auto& t : breaks) t -= shift;
    return Segment(kind_, [inner, shift](double t) { return inner(t + shift); }, new_begin, b_ - shift, label_,
                   std::move(breaks));
  }

 private:
  Segment(SegmentKind kind, ProbeFn probe, double a, double b, std::string label, std::vector<double> breaks = {})
      : kind_(kind), probe_(std::move(probe)), a_(a), b_(b), label_(std::move(label)), breaks_(std::move(breaks)) {
    if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_)) {
      throw DomainError("segment domain must satisfy a < b");
    }
    if (breaks_.size() < 2) breaks_ = {a_, b_};
    breaks_.front() = a_;
    breaks_.back() = b_;
  }

  template <class Interp>
  static ProbeFn spline_probe(std::shared_ptr<std::vector<Interp>> splines, std::size_t dim) {
    return [splines, dim](double t) {
      Kinematics k{FourVector(dim), FourVector(dim), FourVector(dim)};
      for (std::size_t i = 0; i < dim; ++i) {
        const SplineValue s = (*splines)[i](t);
        k.x[i] = s.value;
        k.v[i] = s.first;
        k.a[i] = s.second;
      }
      return k;
    };
  }

  SegmentKind kind_;
  ProbeFn probe_;
  double a_;
  double b_;
  std::string label_;
  std::vector<double> breaks_;
};

namespace detail {

inline FourVector direction(const FourVector& v) { return v / norm(v); }

inline double max_abs_diff(const FourVector& p, const FourVector& q) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
  return m;
}

inline void check_join(const Kinematics& end, const Kinematics& start, double tol, std::size_t index) {
  require_same_dim(end.x, start.x);
  const double dpos = max_abs_diff(end.x, start.x);
  if (!(dpos <= tol)) {
    throw JoinError(JoinKind::Position, "junction " + std::to_string(index) + ": position jump " +
                                            std::to_string(dpos) + " exceeds tol_join");
  }
  require_future_timelike(end.v, "junction velocity");
  require_future_timelike(start.v, "junction velocity");
  const double ddir = max_abs_diff(direction(end.v), direction(start.v));
  if (!(ddir <= tol)) {
    throw JoinError(JoinKind::Kink, "junction " + std::to_string(index) + ": direction jump " +
                                        std::to_string(ddir) + " exceeds tol_join (velocity kink)");
  }
}

}  // namespace detail

class Worldline {
 public:
  static constexpr int kValidationProbes = 1000;

  explicit Worldline(std::vector<Segment> segments, double tol_join = kDefaultTolJoin)
      : segments_(std::move(segments)), tol_join_(tol_join) {
    if (segments_.empty()) throw DomainError("worldline needs at least one segment");
    if (!(tol_join_ >= 0.0)) throw DomainError("tol_join must be >= 0");
    for (std::size_t i = 1; i < segments_.size(); ++i) {
      if (segments_[i].begin() != segments_[i - 1].end()) {
        throw DomainError("segment domains must be contiguous and increasing");
      }
      detail::check_join(segments_[i - 1].probe(segments_[i - 1].end()), segments_[i].probe(segments_[i].begin()),
                         tol_join_, i);
    }
    validate_probes();
  }

  explicit Worldline(Segment segment) : Worldline(std::vector<Segment>{std::move(segment)}) {}

  double begin() const noexcept { return segments_.front().begin(); }
  double end() const noexcept { return segments_.back().end(); }
  std::size_t dim() const { return segments_.front().probe(begin()).x.dim(); }
  double tol_join() const noexcept { return tol_join_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  /// Index of the segment owning parameter t. Interior junctions belong to the later segment.
  std::size_t segment_index(double t) const {
    require_in_domain(t);
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
      if (t < segments_[i].end()) return i;
    }
    return segments_.size() - 1;
  }

  Kinematics probe(double t) const {
    const Kinematics k = segments_[segment_index(t)].probe(t);
    require_future_timelike(k.v, ("worldline velocity at t=" + std::to_string(t)).c_str());
    return k;
  }

 private:
  void require_in_domain(double t) const {
    if (!(t >= begin() && t <= end())) {
      throw DomainError("parameter " + std::to_string(t) + " outside worldline domain [" + std::to_string(begin()) +
                        ", " + std::to_string(end()) + "]");
    }
  }

  void validate_probes() const {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> pick(begin(), end());
    for (const auto& s : segments_) {
      for (double t : {s.begin(), s.end()}) check_probe(s, t);
    }
    for (int i = 0; i < kValidationProbes; ++i) {
      const double t = pick(rng);
      check_probe(segments_[segment_index(t)], t);
    }
  }

  static void check_probe(const Segment& s, double t) {
    const Kinematics k = s.probe(t);
    if (!is_finite(k.x) || !is_finite(k.a)) {
      throw DomainError("worldline has non-finite kinematics at t=" + std::to_string(t));
    }
    require_future_timelike(k.v, ("worldline velocity at t=" + std::to_string(t)).c_str());
  }

  std::vector<Segment> segments_;
  double tol_join_;
};

/// A strictly increasing map φ: [alpha, beta] → [a, b] with φ′ and φ″.
struct ReparamFn {
  double alpha = 0.0;
  double beta = 1.0;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> ddphi;

  /// Build from a generic callable evaluated with second-order dual numbers.
  template <class F>
  static ReparamFn from_autodiff(F f, double alpha, double beta) {
    using D2 = Dual<Dual<double>>;
    auto seed = [](double u) { return D2(Dual<double>(u, 1.0), Dual<double>(1.0, 0.0)); };
    return ReparamFn{alpha, beta, [f](double u) { return f(u); },
                     [f, seed](double u) { return f(seed(u)).val.eps; },
                     [f, seed](double u) { return f(seed(u)).eps.eps; }};
  }

  static ReparamFn identity(double a, double b) {
    return ReparamFn{a, b, [](double u) { return u; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
  }

  /// φ(u) = a + (b−a)·p(s), s = (u−α)/(β−α), p(s) = w1·s + w2·s² + w3·s³.
  /// Requires w1 > 0, w2, w3 ≥ 0 and w1 + w2 + w3 = 1 (up to normalization).
  static ReparamFn cubic(double alpha, double beta, double a, double b, double w1, double w2, double w3) {
    if (!(w1 > 0.0) || w2 < 0.0 || w3 < 0.0) throw DomainError("cubic reparametrization weights invalid");
    const double sum = w1 + w2 + w3;
    w1 /= sum;
    w2 /= sum;
    w3 /= sum;
    const double du = beta - alpha;
    const double dt = b - a;
    return ReparamFn{alpha, beta,
                     [=](double u) {
                       const double s = (u - alpha) / du;
                       return a + dt * (w1 * s + w2 * s * s + w3 * s * s * s);
                     },
                     [=](double u) {
                       const double s = (u - alpha) / du;
                       return dt / du * (w1 + 2.0 * w2 * s + 3.0 * w3 * s * s);
                     },
                     [=](double u) {
                       const double s = (u - alpha) / du;
                       return dt / (du * du) * (2.0 * w2 + 6.0 * w3 * s);
                     }};
  }

  /// Solve φ(u) = t by bisection.
  double inverse(double t) const {
    double lo = alpha, hi = beta;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (phi(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
};

/// The same point set traced through y(u) = x(φ(u)).
inline Worldline reparametrize(const Worldline& w, const ReparamFn& f) {
  if (!(f.alpha < f.beta)) throw DomainError("reparametrization domain must satisfy alpha < beta");
  const double scale = std::max({1.0, std::abs(w.begin()), std::abs(w.end())});
  if (std::abs(f.phi(f.alpha) - w.begin()) > 1e-12 * scale || std::abs(f.phi(f.beta) - w.end()) > 1e-12 * scale) {
    throw DomainError("reparametrization endpoints do not map onto the worldline domain");
  }
  constexpr int kChecks = 1000;
  for (int i = 0; i <= kChecks; ++i) {
    const double u = f.alpha + (f.beta - f.alpha) * i / kChecks;
    if (!(f.dphi(u) > 0.0)) throw DomainError("reparametrization is not strictly increasing at u=" + std::to_string(u));
  }

  const auto& segs = w.segments();
  std::vector<double> breaks{f.alpha};
  for (std::size_t i = 1; i < segs.size(); ++i) breaks.push_back(f.inverse(segs[i].begin()));
  breaks.push_back(f.beta);

  std::vector<Segment> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment inner = segs[i];
    auto probe = [inner, f](double u) {
      const double t = std::clamp(f.phi(u), inner.begin(), inner.end());
      const double d1 = f.dphi(u);
      const double d2 = f.ddphi(u);
      const Kinematics k = inner.probe(t);
      return Kinematics{k.x, d1 * k.v, d2 * k.v + (d1 * d1) * k.a};
    };
    std::vector<double> knots{breaks[i]};
    const auto& inner_breaks = inner.breakpoints();
    for (std::size_t k = 1; k + 1 < inner_breaks.size(); ++k) knots.push_back(f.inverse(inner_breaks[k]));
    knots.push_back(breaks[i + 1]);
    out.push_back(inner.retraced(probe, breaks[i], breaks[i + 1], std::move(knots)));
  }
  return Worldline(std::move(out), w.tol_join());
}

/// Join worldlines end to start. Parameters of later parts are shifted to follow on.
inline Worldline concat(const std::vector<Worldline>& parts, double tol_join = kDefaultTolJoin) {
  if (parts.empty()) throw DomainError("concat needs at least one part");
  std::vector<Segment> segs;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (p > 0) {
      const Worldline& prev = parts[p - 1];
      const Worldline& next = parts[p];
      detail::check_join(prev.segments().back().probe(prev.end()), next.segments().front().probe(next.begin()),
                         tol_join, p);
    }
    for (const auto& s : parts[p].segments()) {
      segs.push_back(segs.empty() ? s : s.rebased(segs.back().end()));
    }
  }
  return Worldline(std::move(segs), tol_join);
}

struct ProperLength {
  double length = 0.0;       ///< ∫‖ẋ‖dt
  double proper_time = 0.0;  ///< length / c
  double error_estimate = 0.0;
};

inline ProperLength proper_length(const Worldline& w, const QuadratureConfig& quad = {}, double c = 1.0) {
  if (!(c > 0.0)) throw DomainError("speed of light must be > 0");
  ProperLength out;
  for (const auto& s : w.segments()) {
    const auto r = integrate_or_throw([&](double t) { return norm(s.probe(t).v); }, s.breakpoints(), quad,
                                      "proper_length");
    out.length += r.value;
    out.error_estimate += r.error_estimate;
  }
  out.proper_time = out.length / c;
  return out;
}

namespace worldlines {

/// origin + (t − t0)·velocity on [t0, t1].
inline Worldline straight(const FourVector& origin, const FourVector& velocity, double t0, double t1) {
  require_same_dim(origin, velocity);
  const std::size_t d = origin.dim();
  return Worldline(Segment::analytic(
      [=](double t) { return Kinematics{origin + (t - t0) * velocity, velocity, FourVector(d)}; }, t0, t1,
      "straight"));
}

/// x(t) = sin t·e₀ + cos t·e₁. Timelike for |t| < π/4.
inline Worldline circular_arc(double t0, double t1) {
  return Worldline(Segment::analytic(
      [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return Kinematics{{s, c}, {c, -s}, {-s, -c}};
      },
      t0, t1, "circular_arc"));
}

/// x(t) = c·sinh t·e₀ + v·cosh t·e₁ with 0 < v ≤ c. v = c is uniformly accelerated motion.
inline Worldline hyperbolic_boost(double c, double v, double t0, double t1) {
  if (!(v > 0.0 && v <= c)) throw DomainError("hyperbolic_boost requires 0 < v <= c");
  return Worldline(Segment::analytic(
      [c, v](double t) {
        const double sh = std::sinh(t), ch = std::cosh(t);
        return Kinematics{{c * sh, v * ch}, {c * ch, v * sh}, {c * sh, v * ch}};
      },
      t0, t1, "hyperbolic_boost"));
}

inline Worldline sampled(const std::vector<std::pair<double, FourVector>>& knots) {
  return Worldline(Segment::sampled(knots));
}

}  // namespace worldlines

/// n evenly spaced parameters over the full domain, endpoints included.
inline std::vector<double> uniform_parameters(const Worldline& w, std::size_t n) {
  if (n == 0) throw DomainError("need at least one sample");
  std::vector<double> ts;
  if (n == 1) return {w.begin()};
  for (std::size_t i = 0; i < n; ++i) {
    ts.push_back(i + 1 == n ? w.end() : w.begin() + (w.end() - w.begin()) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return ts;
}

}  // namespace geolag
