#pragma once

/**
 * Lagrangians L(x, ẋ) built as sums of terms, with value and both partials.
 *
 * Gradients are returned as vectors g such that the directional derivative of L
 * along δ equals dot(g, δ) under the Minkowski metric, i.e. with the index
 * raised. Contracting d_v with ẋ through dot() therefore yields L itself for any
 * 1-homogeneous Lagrangian. Use lowered() to get the plain partials ∂L/∂x^μ.
 */

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geolag/dual.hpp"
#include "geolag/errors.hpp"
#include "geolag/minkowski.hpp"
#include "geolag/polynomial.hpp"

namespace geolag {

/// Scalar function of one coordinate with its first two derivatives.
class Potential1D {
 public:
  using Fn = std::function<double(double)>;

  /// Without `second_derivative`, V″ falls back to central differences of V′.
  static Potential1D analytic(Fn value, Fn derivative, Fn second_derivative = {}) {
    if (!second_derivative) {
      second_derivative = [derivative](double x) {
        const double h = 1e-5 * (1.0 + std::abs(x));
        return (derivative(x + h) - derivative(x - h)) / (2.0 * h);
      };
    }
    return Potential1D(std::move(value), std::move(derivative), std::move(second_derivative));
  }

  /// `f` must be generic over double, Dual<double> and Dual<Dual<double>>.
  template <class F>
  static Potential1D autodiff(F f) {
    using D2 = Dual<Dual<double>>;
    return Potential1D([f](double x) { return f(x); },
                       [f](double x) { return f(Dual<double>::variable(x)).eps; },
                       [f](double x) { return f(D2(Dual<double>(x, 1.0), Dual<double>(1.0, 0.0))).eps.eps; });
  }

  static Potential1D polynomial(std::vector<double> coefficients) {
    Polynomial p(std::move(coefficients));
    Polynomial dp = p.derivative();
    Polynomial ddp = dp.derivative();
    return Potential1D([p](double x) { return p(x); }, [dp](double x) { return dp(x); },
                       [ddp](double x) { return ddp(x); });
  }

  double operator()(double x) const { return value_(x); }
  double derivative(double x) const { return derivative_(x); }
  double second_derivative(double x) const { return second_(x); }

 private:
  Potential1D(Fn value, Fn derivative, Fn second)
      : value_(std::move(value)), derivative_(std::move(derivative)), second_(std::move(second)) {}

  Fn value_;
  Fn derivative_;
  Fn second_;
};

/// Background four-potential A(x) with its Jacobian columns ∂A/∂x^ν.
class VectorField {
 public:
  using ValueFn = std::function<FourVector(const FourVector&)>;
  /// Returns column ν of the Jacobian, ∂A/∂x^ν.
  using JacobianFn = std::function<FourVector(const FourVector&, std::size_t)>;

  static VectorField constant(FourVector a) {
    const std::size_t d = a.dim();
    return VectorField([a](const FourVector&) { return a; },
                       [d](const FourVector&, std::size_t) { return FourVector(d); });
  }

  static VectorField analytic(ValueFn value, JacobianFn jacobian) {
    return VectorField(std::move(value), std::move(jacobian));
  }

  /// `f` maps BasicFourVector<T> to BasicFourVector<T> for T = double and T = Dual<double>.
  template <class F>
  static VectorField autodiff(F f) {
    return VectorField([f](const FourVector& x) { return f(x); },
                       [f](const FourVector& x, std::size_t nu) {
                         BasicFourVector<Dual<double>> xd(x.dim());
                         for (std::size_t i = 0; i < x.dim(); ++i) xd[i] = Dual<double>(x[i], i == nu ? 1.0 : 0.0);
                         const auto ad = f(xd);
                         FourVector col(x.dim());
                         for (std::size_t i = 0; i < x.dim(); ++i) col[i] = ad[i].eps;
                         return col;
                       });
  }

  /// Component μ is a polynomial in the single coordinate x^{axis[μ]}.
  static VectorField axis_polynomials(std::vector<std::size_t> axes, std::vector<Polynomial> polys) {
    if (axes.size() != polys.size()) throw DimensionError("axis_polynomials: size mismatch");
    const std::size_t d = axes.size();
    for (std::size_t ax : axes) {
      if (ax >= d) throw DimensionError("axis_polynomials: axis out of range");
    }
    std::vector<Polynomial> dpolys;
    for (const auto& p : polys) dpolys.push_back(p.derivative());
    return VectorField(
        [axes, polys](const FourVector& x) {
          FourVector a(x.dim());
          for (std::size_t mu = 0; mu < x.dim(); ++mu) a[mu] = polys[mu](x[axes[mu]]);
          return a;
        },
        [axes, dpolys](const FourVector& x, std::size_t nu) {
          FourVector col(x.dim());
          for (std::size_t mu = 0; mu < x.dim(); ++mu) {
            if (axes[mu] == nu) col[mu] = dpolys[mu](x[nu]);
          }
          return col;
        });
  }

  FourVector operator()(const FourVector& x) const { return value_(x); }
  FourVector jacobian_column(const FourVector& x, std::size_t nu) const { return jacobian_(x, nu); }

 private:
  VectorField(ValueFn value, JacobianFn jacobian) : value_(std::move(value)), jacobian_(std::move(jacobian)) {}

  ValueFn value_;
  JacobianFn jacobian_;
};

namespace terms {

/// −mc√(ẋ·ẋ)
struct FreeParticle {
  double m = 1.0;
};

/// −A_μ(x)ẋ^μ, i.e. −dot(A(x), ẋ).
struct VectorPotential {
  VectorField field;
};

/// −V(x¹)·ẋ⁰/c. With x⁰ = ct this is the −V(x)t′ term of a 1+1 Lagrangian.
struct StaticPotential1p1 {
  Potential1D V;
};

/// k·(ẋ·ẋ). Not 1-homogeneous: exists so geometric checks have something to reject.
struct QuadraticKinetic {
  double k = 1.0;
};

}  // namespace terms

using LagrangianTerm =
    std::variant<terms::FreeParticle, terms::VectorPotential, terms::StaticPotential1p1, terms::QuadraticKinetic>;

struct Gradients {
  FourVector d_x;  ///< ∂L/∂x, index raised
  FourVector d_v;  ///< ∂L/∂ẋ (conjugate momentum), index raised
};

class LagrangianSpec {
 public:
  LagrangianSpec() = default;
  explicit LagrangianSpec(std::vector<LagrangianTerm> terms, double c = 1.0) : terms_(std::move(terms)), c_(c) {
    if (!(c_ > 0.0) || !std::isfinite(c_)) throw DomainError("speed of light must be > 0");
    for (const auto& t : terms_) {
      if (const auto* fp = std::get_if<terms::FreeParticle>(&t); fp && !(fp->m > 0.0)) {
        throw DomainError("free particle mass must be > 0");
      }
    }
  }

  static LagrangianSpec free_particle(double m = 1.0, double c = 1.0) {
    return LagrangianSpec({terms::FreeParticle{m}}, c);
  }

  LagrangianSpec& add(LagrangianTerm term) {
    terms_.push_back(std::move(term));
    return *this;
  }

  double c() const noexcept { return c_; }
  const std::vector<LagrangianTerm>& terms() const noexcept { return terms_; }

  /// Total mass when every term is a free-particle term; 0 otherwise.
  double pure_free_particle_mass() const {
    if (terms_.empty()) return 0.0;
    double m = 0.0;
    for (const auto& t : terms_) {
      const auto* fp = std::get_if<terms::FreeParticle>(&t);
      if (!fp) return 0.0;
      m += fp->m;
    }
    return m;
  }

  double eval(const FourVector& x, const FourVector& v) const {
    check_args(x, v);
    double sum = 0.0;
    for (const auto& t : terms_) {
      sum += std::visit([&](const auto& term) { return term_value(term, x, v); }, t);
    }
    return sum;
  }

  Gradients gradients(const FourVector& x, const FourVector& v) const {
    check_args(x, v);
    Gradients g{FourVector(x.dim()), FourVector(x.dim())};
    for (const auto& t : terms_) std::visit([&](const auto& term) { accumulate(term, x, v, g); }, t);
    return g;
  }

  /// d/dt of ∂L/∂ẋ along a path passing through x with velocity v and acceleration a.
  FourVector momentum_rate(const FourVector& x, const FourVector& v, const FourVector& a) const {
    check_args(x, v);
    require_same_dim(v, a);
    FourVector rate(x.dim());
    for (const auto& t : terms_) std::visit([&](const auto& term) { rate += term_momentum_rate(term, x, v, a); }, t);
    return rate;
  }

 private:
  void check_args(const FourVector& x, const FourVector& v) const {
    require_same_dim(x, v);
    if (!is_finite(x)) throw DomainError("position has non-finite components");
    require_future_timelike(v, "velocity");
  }

  double term_value(const terms::FreeParticle& t, const FourVector&, const FourVector& v) const {
    return -t.m * c_ * norm(v);
  }
  double term_value(const terms::VectorPotential& t, const FourVector& x, const FourVector& v) const {
    return -dot(t.field(x), v);
  }
  double term_value(const terms::StaticPotential1p1& t, const FourVector& x, const FourVector& v) const {
    require_1p1(x);
    return -t.V(x[1]) * v[0] / c_;
  }
  double term_value(const terms::QuadraticKinetic& t, const FourVector&, const FourVector& v) const {
    return t.k * dot(v, v);
  }

  void accumulate(const terms::FreeParticle& t, const FourVector&, const FourVector& v, Gradients& g) const {
    g.d_v -= (t.m * c_ / norm(v)) * v;
  }
  void accumulate(const terms::VectorPotential& t, const FourVector& x, const FourVector& v, Gradients& g) const {
    // ∂/∂x^ν of −dot(A, v) is −dot(∂A/∂x^ν, v); raising ν multiplies by the metric sign.
    for (std::size_t nu = 0; nu < x.dim(); ++nu) {
      g.d_x[nu] -= metric_sign(nu) * dot(t.field.jacobian_column(x, nu), v);
    }
    g.d_v -= t.field(x);
  }
  void accumulate(const terms::StaticPotential1p1& t, const FourVector& x, const FourVector& v, Gradients& g) const {
    require_1p1(x);
    g.d_x[1] += t.V.derivative(x[1]) * v[0] / c_;  // raw partial −V′v⁰/c, raised
    g.d_v[0] -= t.V(x[1]) / c_;
  }
  void accumulate(const terms::QuadraticKinetic& t, const FourVector&, const FourVector& v, Gradients& g) const {
    g.d_v += (2.0 * t.k) * v;
  }

  FourVector term_momentum_rate(const terms::FreeParticle& t, const FourVector&, const FourVector& v,
                                const FourVector& a) const {
    const double n = norm(v);
    return -(t.m * c_) * (a / n - (dot(v, a) / (n * n * n)) * v);
  }
  FourVector term_momentum_rate(const terms::VectorPotential& t, const FourVector& x, const FourVector& v,
                                const FourVector&) const {
    FourVector rate(x.dim());
    for (std::size_t nu = 0; nu < x.dim(); ++nu) rate -= v[nu] * t.field.jacobian_column(x, nu);
    return rate;
  }
  FourVector term_momentum_rate(const terms::StaticPotential1p1& t, const FourVector& x, const FourVector& v,
                                const FourVector&) const {
    require_1p1(x);
    FourVector rate(2);
    rate[0] = -t.V.derivative(x[1]) * v[1] / c_;
    return rate;
  }
  FourVector term_momentum_rate(const terms::QuadraticKinetic& t, const FourVector&, const FourVector&,
                                const FourVector& a) const {
    return (2.0 * t.k) * a;
  }

  static void require_1p1(const FourVector& x) {
    if (x.dim() != 2) throw DimensionError("StaticPotential1p1 requires 1+1 dimensions");
  }

  std::vector<LagrangianTerm> terms_;
  double c_ = 1.0;
};

/// |L(x, λv) − λL(x, v)|. Zero for geometric Lagrangians.
inline double homogeneity_residual(const LagrangianSpec& L, const FourVector& x, const FourVector& v, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("homogeneity_residual: lambda must be > 0");
  return std::abs(L.eval(x, lambda * v) - lambda * L.eval(x, v));
}

/// p·ẋ − L with p = ∂L/∂ẋ. Zero for geometric Lagrangians by Euler's homogeneous function theorem.
inline double hamiltonian_residual(const LagrangianSpec& L, const FourVector& x, const FourVector& v) {
  const Gradients g = L.gradients(x, v);
  return dot(g.d_v, v) - L.eval(x, v);
}

}  // namespace geolag
