#pragma once

// Flat spacetime with signature (+,-,...,-) in 1+1 or 3+1 dimensions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>

#include "geolag/dual.hpp"
#include "geolag/errors.hpp"

namespace geolag {

/// Components of an event or tangent vector. Index 0 is the time component (x⁰ = ct).
template <typename T>
class BasicFourVector {
 public:
  static constexpr std::size_t kMaxDim = 4;

  BasicFourVector() = default;

  explicit BasicFourVector(std::size_t dim) : dim_(checked_dim(dim)) {}

  BasicFourVector(std::initializer_list<T> components) : dim_(checked_dim(components.size())) {
    std::copy(components.begin(), components.end(), data_.begin());
  }

  template <typename Range>
  static BasicFourVector from_range(const Range& r) {
    BasicFourVector out(static_cast<std::size_t>(std::size(r)));
    std::size_t i = 0;
    for (const auto& c : r) out.data_[i++] = T(c);
    return out;
  }

  /// Unit vector along axis `mu` of the canonical basis.
  static BasicFourVector basis(std::size_t dim, std::size_t mu) {
    BasicFourVector out(dim);
    if (mu >= dim) throw DimensionError("basis index out of range");
    out.data_[mu] = T(1);
    return out;
  }

  std::size_t dim() const noexcept { return dim_; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  const T* begin() const noexcept { return data_.data(); }
  const T* end() const noexcept { return data_.data() + dim_; }

  BasicFourVector& operator+=(const BasicFourVector& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  BasicFourVector& operator-=(const BasicFourVector& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BasicFourVector& operator*=(const T& s) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] *= s;
    return *this;
  }
  BasicFourVector& operator/=(const T& s) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] /= s;
    return *this;
  }

  friend BasicFourVector operator+(BasicFourVector a, const BasicFourVector& b) { return a += b; }
  friend BasicFourVector operator-(BasicFourVector a, const BasicFourVector& b) { return a -= b; }
  friend BasicFourVector operator*(BasicFourVector a, const T& s) { return a *= s; }
  friend BasicFourVector operator*(const T& s, BasicFourVector a) { return a *= s; }
  friend BasicFourVector operator/(BasicFourVector a, const T& s) { return a /= s; }
  friend BasicFourVector operator-(BasicFourVector a) {
    for (std::size_t i = 0; i < a.dim_; ++i) a.data_[i] = -a.data_[i];
    return a;
  }

  friend bool operator==(const BasicFourVector& a, const BasicFourVector& b) {
    return a.dim_ == b.dim_ && std::equal(a.begin(), a.end(), b.begin());
  }

  friend void require_same_dim(const BasicFourVector& a, const BasicFourVector& b) {
    if (a.dim_ != b.dim_) {
      throw DimensionError("dimension mismatch: " + std::to_string(a.dim_) + " vs " +
                           std::to_string(b.dim_));
    }
  }

 private:
  static std::size_t checked_dim(std::size_t d) {
    if (d != 2 && d != 4) throw DimensionError("dimension must be 2 or 4, got " + std::to_string(d));
    return d;
  }

  std::array<T, kMaxDim> data_{};
  std::size_t dim_ = 2;
};

using FourVector = BasicFourVector<double>;

inline std::ostream& operator<<(std::ostream& os, const FourVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

/// Metric sign of axis `mu`: +1 for time, -1 for space.
constexpr double metric_sign(std::size_t mu) noexcept { return mu == 0 ? 1.0 : -1.0; }

/// Minkowski contraction u⁰w⁰ − Σ uⁱwⁱ.
template <typename T>
T dot(const BasicFourVector<T>& u, const BasicFourVector<T>& w) {
  require_same_dim(u, w);
  T s = u[0] * w[0];
  for (std::size_t i = 1; i < u.dim(); ++i) s -= u[i] * w[i];
  return s;
}

/// √|v·v|. Applies to timelike and spacelike vectors alike; lightlike vectors have norm 0.
template <typename T>
T norm(const BasicFourVector<T>& v) {
  using std::abs;
  using std::sqrt;
  return sqrt(abs(dot(v, v)));
}

inline double euclidean_norm(const FourVector& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

/// Lower (or raise) the index: flips the sign of spatial components.
template <typename T>
BasicFourVector<T> lowered(BasicFourVector<T> v) {
  for (std::size_t i = 1; i < v.dim(); ++i) v[i] = -v[i];
  return v;
}

inline bool is_finite(const FourVector& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

enum class CausalClass { Timelike, Spacelike, Lightlike };

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
  }
  return "?";
}

inline CausalClass classify(const FourVector& v, double tolerance) {
  if (tolerance < 0.0) throw DomainError("classification tolerance must be non-negative");
  const double s = dot(v, v);
  if (s > tolerance) return CausalClass::Timelike;
  if (s < -tolerance) return CausalClass::Spacelike;
  return CausalClass::Lightlike;
}

/// Timelike and pointing to the future, with all components finite.
inline bool is_future_timelike(const FourVector& v) {
  return is_finite(v) && v[0] > 0.0 && classify(v, 0.0) == CausalClass::Timelike;
}

inline void require_future_timelike(const FourVector& v, const char* what) {
  if (!is_future_timelike(v)) {
    std::string msg = std::string(what) + " must be future-pointing timelike, got (";
    for (std::size_t i = 0; i < v.dim(); ++i) msg += (i ? ", " : "") + std::to_string(v[i]);
    throw CausalityError(msg + ")");
  }
}

// Rounding on nearly parallel unit vectors may push the cosine just below 1.
inline constexpr double kArgcoshClampMargin = 1e-9;

/// Rapidity between two future timelike directions: argcosh of their normalized dot.
inline double rapidity_between(const FourVector& u, const FourVector& w) {
  require_future_timelike(u, "rapidity_between: first argument");
  require_future_timelike(w, "rapidity_between: second argument");
  double cosh_angle = dot(u, w) / (norm(u) * norm(w));
  if (cosh_angle < 1.0) {
    if (cosh_angle < 1.0 - kArgcoshClampMargin) {
      throw DomainError("rapidity_between: normalized dot below 1");
    }
    cosh_angle = 1.0;
  }
  return std::acosh(cosh_angle);
}

/// Unit timelike vector at rapidity `phi` along spatial axis `axis` (1-based).
inline FourVector boosted_unit(std::size_t dim, double phi, std::size_t axis = 1) {
  FourVector v(dim);
  v[0] = std::cosh(phi);
  v[axis] = std::sinh(phi);
  return v;
}

}  // namespace geolag
