#pragma once

/**
 * Forward-mode automatic differentiation.
 *
 * A dual number a + b·ε with ε² = 0 carries a value and one directional
 * derivative through arithmetic. Nesting (Dual<Dual<double>>) yields second
 * derivatives, which reparametrizations need for the acceleration chain rule.
 */

#include <cmath>
#include <type_traits>

namespace geolag {

template <typename T = double>
struct Dual {
  T val{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(T v) : val(v), eps(T{}) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T v, T d) : val(v), eps(d) {}

  /// Seed an independent variable: derivative of x w.r.t. itself is 1.
  static constexpr Dual variable(T v) { return Dual(v, T(1)); }

  constexpr Dual& operator+=(const Dual& o) {
    val += o.val;
    eps += o.eps;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    val -= o.val;
    eps -= o.eps;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    eps = eps * o.val + val * o.eps;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    eps = (eps * o.val - val * o.eps) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

template <typename>
struct is_dual : std::false_type {};
template <typename T>
struct is_dual<Dual<T>> : std::true_type {};

/// Plain value underneath any number of dual layers.
template <typename T>
constexpr double primal(const T& x) {
  if constexpr (is_dual<T>::value) {
    return primal(x.val);
  } else {
    return static_cast<double>(x);
  }
}

template <typename T>
constexpr Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <typename T>
constexpr Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <typename T>
constexpr Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <typename T>
constexpr Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.val, -a.eps}; }

// Mixed arithmetic with plain scalars.
template <typename T>
constexpr Dual<T> operator+(Dual<T> a, double b) { return a += Dual<T>(T(b)); }
template <typename T>
constexpr Dual<T> operator+(double a, Dual<T> b) { return b += Dual<T>(T(a)); }
template <typename T>
constexpr Dual<T> operator-(Dual<T> a, double b) { return a -= Dual<T>(T(b)); }
template <typename T>
constexpr Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(T(a)) - b; }
template <typename T>
constexpr Dual<T> operator*(Dual<T> a, double b) { return {a.val * b, a.eps * b}; }
template <typename T>
constexpr Dual<T> operator*(double a, Dual<T> b) { return {b.val * a, b.eps * a}; }
template <typename T>
constexpr Dual<T> operator/(Dual<T> a, double b) { return {a.val / b, a.eps / b}; }
template <typename T>
constexpr Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(T(a)) / b; }

template <typename T>
constexpr bool operator<(const Dual<T>& a, const Dual<T>& b) { return primal(a) < primal(b); }
template <typename T>
constexpr bool operator>(const Dual<T>& a, const Dual<T>& b) { return primal(a) > primal(b); }
template <typename T>
constexpr bool operator<(const Dual<T>& a, double b) { return primal(a) < b; }
template <typename T>
constexpr bool operator>(const Dual<T>& a, double b) { return primal(a) > b; }

// Elementary functions. Each applies f(a + bε) = f(a) + f'(a)·b·ε.
using std::abs;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <typename T>
Dual<T> sqrt(const Dual<T>& a) {
  const T s = sqrt(a.val);
  return {s, a.eps / (2.0 * s)};
}
template <typename T>
Dual<T> exp(const Dual<T>& a) {
  const T e = exp(a.val);
  return {e, a.eps * e};
}
template <typename T>
Dual<T> log(const Dual<T>& a) { return {log(a.val), a.eps / a.val}; }
template <typename T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.val), a.eps * cos(a.val)}; }
template <typename T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.val), -(a.eps * sin(a.val))}; }
template <typename T>
Dual<T> sinh(const Dual<T>& a) { return {sinh(a.val), a.eps * cosh(a.val)}; }
template <typename T>
Dual<T> cosh(const Dual<T>& a) { return {cosh(a.val), a.eps * sinh(a.val)}; }
template <typename T>
Dual<T> tanh(const Dual<T>& a) {
  const T t = tanh(a.val);
  return {t, a.eps * (1.0 - t * t)};
}
template <typename T>
Dual<T> atanh(const Dual<T>& a) { return {atanh(a.val), a.eps / (1.0 - a.val * a.val)}; }
template <typename T>
Dual<T> pow(const Dual<T>& a, double p) {
  return {pow(a.val, p), a.eps * p * pow(a.val, p - 1.0)};
}
template <typename T>
Dual<T> abs(const Dual<T>& a) { return primal(a) < 0.0 ? -a : a; }

}  // namespace geolag
