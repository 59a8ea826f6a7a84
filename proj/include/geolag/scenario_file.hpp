#pragma once

/**
 * Scenario files: a strict JSON description of a Lagrangian, a worldline and
 * the analyses to run on it. Unknown keys are errors, and every physical
 * parameter is validated before anything is built.
 *
 * {
 *   "units": {"c": 1},
 *   "lagrangian": {"dimension": 2, "terms": [{"type": "free_particle", "m": 1}]},
 *   "worldline": {"family": "circular_arc", "v_over_c": 0.6},
 *   "analysis": {"deviation": true},
 *   "quadrature": {"abs_tol": 1e-10, "rel_tol": 1e-8, "max_depth": 40},
 *   "tolerances": {"geo_tol": 1e-8, "tol_join": 1e-9}
 * }
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "geolag/errors.hpp"
#include "geolag/lagrangian.hpp"
#include "geolag/minkowski.hpp"
#include "geolag/polynomial.hpp"
#include "geolag/quadrature.hpp"
#include "geolag/scenarios.hpp"
#include "geolag/worldline.hpp"

namespace geolag::scenario {

using Json = nlohmann::json;

struct FreeParticleTerm {
  double m = 1.0;
  friend bool operator==(const FreeParticleTerm&, const FreeParticleTerm&) = default;
};

/// Component μ of A is a polynomial in the coordinate x^axis.
struct PotentialComponent {
  std::size_t axis = 0;
  std::vector<double> coefficients;
  friend bool operator==(const PotentialComponent&, const PotentialComponent&) = default;
};

struct VectorPotentialTerm {
  std::vector<PotentialComponent> components;
  friend bool operator==(const VectorPotentialTerm&, const VectorPotentialTerm&) = default;
};

struct StaticPotentialTerm {
  std::vector<double> coefficients;
  friend bool operator==(const StaticPotentialTerm&, const StaticPotentialTerm&) = default;
};

/// k·ẋ·ẋ. Not 1-homogeneous; exists so that `check` has something to reject.
struct QuadraticKineticTerm {
  double k = 1.0;
  friend bool operator==(const QuadraticKineticTerm&, const QuadraticKineticTerm&) = default;
};

using TermDecl = std::variant<FreeParticleTerm, VectorPotentialTerm, StaticPotentialTerm, QuadraticKineticTerm>;

struct LagrangianDecl {
  std::optional<std::size_t> dimension;
  std::vector<TermDecl> terms;
  friend bool operator==(const LagrangianDecl&, const LagrangianDecl&) = default;
};

struct StraightDecl {
  std::vector<double> origin;
  std::vector<double> velocity;
  std::array<double, 2> domain{0.0, 1.0};
  friend bool operator==(const StraightDecl&, const StraightDecl&) = default;
};

/// x(t) = (sin t, cos t). Domain [0, arctan(v/c)] when v_over_c is given.
struct CircularArcDecl {
  std::optional<double> v_over_c;
  std::optional<std::array<double, 2>> domain;
  friend bool operator==(const CircularArcDecl&, const CircularArcDecl&) = default;
};

struct HyperbolicBoostDecl {
  double v_over_c = 0.6;
  double T = 5.0;
  friend bool operator==(const HyperbolicBoostDecl&, const HyperbolicBoostDecl&) = default;
};

/// ẋ = e₀ + (v/c)·g(t)·e₁ on [0, 1], g given by polynomial coefficients.
struct CustomMonotoneDecl {
  double v_over_c = 0.6;
  std::vector<double> coefficients{0.0, 1.0};
  friend bool operator==(const CustomMonotoneDecl&, const CustomMonotoneDecl&) = default;
};

enum class TwinRole { Traveler, Homebody };

struct TwinDecl {
  scenarios::TwinScenario params;
  TwinRole role = TwinRole::Traveler;
  friend bool operator==(const TwinDecl&, const TwinDecl&) = default;
};

/// Rows [t, x⁰, x¹, ...].
struct KnotsDecl {
  std::vector<std::vector<double>> rows;
  friend bool operator==(const KnotsDecl&, const KnotsDecl&) = default;
};

struct WorldlineDecl;

struct ConcatDecl {
  std::vector<WorldlineDecl> parts;
  bool operator==(const ConcatDecl&) const;
};

struct WorldlineDecl {
  std::variant<StraightDecl, CircularArcDecl, HyperbolicBoostDecl, CustomMonotoneDecl, TwinDecl, KnotsDecl, ConcatDecl>
      value;
  friend bool operator==(const WorldlineDecl&, const WorldlineDecl&) = default;
};

inline bool ConcatDecl::operator==(const ConcatDecl&) const = default;

struct HomogeneityCheckDecl {
  std::size_t samples = 1000;
  double threshold = 1e-10;
  friend bool operator==(const HomogeneityCheckDecl&, const HomogeneityCheckDecl&) = default;
};

struct AnalysisDecl {
  bool deviation = true;
  bool geodesic_check = false;
  std::optional<HomogeneityCheckDecl> homogeneity_check;
  std::optional<scenarios::TwinScenario> twin;
  std::optional<std::size_t> sample;
  friend bool operator==(const AnalysisDecl&, const AnalysisDecl&) = default;
};

struct Tolerances {
  double geo_tol = kDefaultGeoTol;
  double tol_join = kDefaultTolJoin;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Scenario {
  double c = 1.0;
  LagrangianDecl lagrangian;
  std::optional<WorldlineDecl> worldline;
  AnalysisDecl analysis;
  QuadratureConfig quadrature;
  Tolerances tolerances;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
inline std::string key_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// Typed, path-aware access to one JSON object; rejects keys outside `allowed`.
class Object {
 public:
  Object(const Json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
      if (!ok.count(key)) throw ValidationError(key_path(path_, key), "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& raw(const char* key) const {
    if (!has(key)) throw ValidationError(at(key), "required key missing");
    return j_.at(key);
  }
  std::string at(const char* key) const { return key_path(path_, key); }

  double number(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number()) throw ValidationError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(at(key), "must be finite");
    return x;
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::size_t count(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ValidationError(at(key), "expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ValidationError(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_string()) throw ValidationError(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key) const { return number_list(raw(key), at(key)); }

  std::array<double, 2> interval(const char* key) const {
    const auto v = numbers(key);
    if (v.size() != 2 || !(v[1] > v[0])) throw ValidationError(at(key), "expected [t0, t1] with t1 > t0");
    return {v[0], v[1]};
  }

  static std::vector<double> number_list(const Json& v, const std::string& path) {
    if (!v.is_array()) throw ValidationError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        throw ValidationError(index_path(path, i), "expected a finite number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const Json& j_;
  std::string path_;
};

inline double positive(double x, const std::string& path) {
  if (!(x > 0.0)) throw ValidationError(path, "must be > 0");
  return x;
}

inline double subluminal(double beta, const std::string& path) {
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError(path, "must lie in (0, 1)");
  return beta;
}

inline std::vector<double> coefficient_list(const Object& o, const char* key) {
  auto c = o.numbers(key);
  if (c.empty()) throw ValidationError(o.at(key), "needs at least one coefficient");
  return c;
}

inline TermDecl parse_term(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("type")) throw ValidationError(key_path(path, "type"), "required key missing");
  if (!j.at("type").is_string()) throw ValidationError(key_path(path, "type"), "expected a string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "free_particle") {
    Object o(j, path, {"type", "m"});
    return FreeParticleTerm{positive(o.number("m"), o.at("m"))};
  }
  if (type == "vector_potential") {
    Object o(j, path, {"type", "components"});
    const Json& list = o.raw("components");
    const std::string lpath = o.at("components");
    if (!list.is_array() || (list.size() != 2 && list.size() != 4)) {
      throw ValidationError(lpath, "expected 2 or 4 components");
    }
    VectorPotentialTerm t;
    for (std::size_t i = 0; i < list.size(); ++i) {
      Object c(list[i], index_path(lpath, i), {"axis", "coefficients"});
      PotentialComponent pc{c.count("axis"), coefficient_list(c, "coefficients")};
      if (pc.axis >= list.size()) throw ValidationError(c.at("axis"), "axis out of range");
      t.components.push_back(std::move(pc));
    }
    return t;
  }
  if (type == "static_potential_1p1") {
    Object o(j, path, {"type", "coefficients"});
    return StaticPotentialTerm{coefficient_list(o, "coefficients")};
  }
  if (type == "quadratic_kinetic") {
    Object o(j, path, {"type", "k"});
    return QuadraticKineticTerm{o.number("k")};
  }
  throw ValidationError(key_path(path, "type"), "unknown term type '" + type + "'");
}

inline scenarios::TwinScenario parse_twin_params(const Object& o, double c) {
  scenarios::TwinScenario s;
  s.c = c;
  s.v_over_c = subluminal(o.number("v_over_c"), o.at("v_over_c"));
  s.m = positive(o.number("m", s.m), o.at("m"));
  s.accel_radius = positive(o.number("accel_radius", s.accel_radius), o.at("accel_radius"));
  s.coast = o.number("coast", s.coast);
  if (!(s.coast >= 0.0)) throw ValidationError(o.at("coast"), "must be >= 0");
  return s;
}

inline std::vector<double> vector_of_dim(const Object& o, const char* key) {
  auto v = o.numbers(key);
  if (v.size() != 2 && v.size() != 4) throw ValidationError(o.at(key), "expected 2 or 4 components");
  return v;
}

inline WorldlineDecl parse_worldline(const Json& j, const std::string& path, double c) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  if (j.contains("knots")) {
    Object o(j, path, {"knots"});
    const Json& rows = o.raw("knots");
    const std::string kpath = o.at("knots");
    if (!rows.is_array() || rows.size() < 4) throw ValidationError(kpath, "expected at least 4 knots");
    KnotsDecl k;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto row = Object::number_list(rows[i], index_path(kpath, i));
      if (row.size() != 3 && row.size() != 5) throw ValidationError(index_path(kpath, i), "expected [t, x0, x1(, x2, x3)]");
      if (!k.rows.empty() && row.size() != k.rows.front().size()) {
        throw ValidationError(index_path(kpath, i), "dimension differs from the first knot");
      }
      if (!k.rows.empty() && !(row[0] > k.rows.back()[0])) {
        throw ValidationError(index_path(kpath, i), "knot parameters must increase");
      }
      k.rows.push_back(std::move(row));
    }
    return {k};
  }
  if (j.contains("concat")) {
    Object o(j, path, {"concat"});
    const Json& parts = o.raw("concat");
    if (!parts.is_array() || parts.empty()) throw ValidationError(o.at("concat"), "expected a non-empty array");
    ConcatDecl cd;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      cd.parts.push_back(parse_worldline(parts[i], index_path(o.at("concat"), i), c));
    }
    return {cd};
  }
  if (!j.contains("family")) throw ValidationError(key_path(path, "family"), "expected one of family, knots, concat");
  if (!j.at("family").is_string()) throw ValidationError(key_path(path, "family"), "expected a string");
  const std::string family = j.at("family").get<std::string>();
  if (family == "straight") {
    Object o(j, path, {"family", "origin", "velocity", "domain"});
    StraightDecl s{vector_of_dim(o, "origin"), vector_of_dim(o, "velocity"), o.interval("domain")};
    if (s.origin.size() != s.velocity.size()) throw ValidationError(o.at("velocity"), "dimension differs from origin");
    if (!is_future_timelike(FourVector::from_range(s.velocity))) {
      throw ValidationError(o.at("velocity"), "must be future-pointing timelike");
    }
    return {s};
  }
  if (family == "circular_arc") {
    Object o(j, path, {"family", "v_over_c", "domain"});
    CircularArcDecl a;
    if (o.has("v_over_c") == o.has("domain")) {
      throw ValidationError(o.at("v_over_c"), "give exactly one of v_over_c and domain");
    }
    if (o.has("v_over_c")) a.v_over_c = subluminal(o.number("v_over_c"), o.at("v_over_c"));
    if (o.has("domain")) {
      a.domain = o.interval("domain");
      const double limit = std::atan(1.0) - 1e-12;
      if (!(std::abs((*a.domain)[0]) < limit && std::abs((*a.domain)[1]) < limit)) {
        throw ValidationError(o.at("domain"), "must lie inside (-pi/4, pi/4) where the arc is timelike");
      }
    }
    return {a};
  }
  if (family == "hyperbolic_boost") {
    Object o(j, path, {"family", "v_over_c", "T"});
    HyperbolicBoostDecl h{subluminal(o.number("v_over_c"), o.at("v_over_c")), positive(o.number("T", 5.0), o.at("T"))};
    return {h};
  }
  if (family == "custom_monotone") {
    Object o(j, path, {"family", "v_over_c", "coefficients"});
    CustomMonotoneDecl d{subluminal(o.number("v_over_c"), o.at("v_over_c")),
                         o.has("coefficients") ? coefficient_list(o, "coefficients") : std::vector<double>{0.0, 1.0}};
    const Polynomial g(d.coefficients);
    const Polynomial dg = g.derivative();
    if (std::abs(g(0.0)) > 1e-12 || std::abs(g(1.0) - 1.0) > 1e-12) {
      throw ValidationError(o.at("coefficients"), "profile must satisfy g(0) = 0 and g(1) = 1");
    }
    for (int i = 0; i <= 1000; ++i) {
      if (dg(i / 1000.0) < 0.0) throw ValidationError(o.at("coefficients"), "profile must be non-decreasing on [0, 1]");
    }
    return {d};
  }
  if (family == "twin") {
    Object o(j, path, {"family", "v_over_c", "m", "accel_radius", "coast", "role"});
    TwinDecl t{parse_twin_params(o, c), TwinRole::Traveler};
    if (o.has("role")) {
      const std::string role = o.text("role");
      if (role == "homebody") t.role = TwinRole::Homebody;
      else if (role != "traveler") throw ValidationError(o.at("role"), "expected traveler or homebody");
    }
    return {t};
  }
  throw ValidationError(key_path(path, "family"), "unknown worldline family '" + family + "'");
}


inline Json worldline_json(const WorldlineDecl& w) {
  return std::visit(
      [](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StraightDecl>) {
          return {{"family", "straight"}, {"origin", d.origin}, {"velocity", d.velocity}, {"domain", d.domain}};
        } else if constexpr (std::is_same_v<T, CircularArcDecl>) {
          Json j{{"family", "circular_arc"}};
          if (d.v_over_c) j["v_over_c"] = *d.v_over_c;
          if (d.domain) j["domain"] = *d.domain;
          return j;
        } else if constexpr (std::is_same_v<T, HyperbolicBoostDecl>) {
          return {{"family", "hyperbolic_boost"}, {"v_over_c", d.v_over_c}, {"T", d.T}};
        } else if constexpr (std::is_same_v<T, CustomMonotoneDecl>) {
          return {{"family", "custom_monotone"}, {"v_over_c", d.v_over_c}, {"coefficients", d.coefficients}};
        } else if constexpr (std::is_same_v<T, TwinDecl>) {
          return {{"family", "twin"},
                  {"v_over_c", d.params.v_over_c},
                  {"m", d.params.m},
                  {"accel_radius", d.params.accel_radius},
                  {"coast", d.params.coast},
                  {"role", d.role == TwinRole::Traveler ? "traveler" : "homebody"}};
        } else if constexpr (std::is_same_v<T, KnotsDecl>) {
          return {{"knots", d.rows}};
        } else {
          Json parts = Json::array();
          for (const auto& p : d.parts) parts.push_back(worldline_json(p));
          return {{"concat", parts}};
        }
      },
      w.value);
}

inline Json twin_json(const scenarios::TwinScenario& s) {
  return {{"v_over_c", s.v_over_c}, {"m", s.m}, {"accel_radius", s.accel_radius}, {"coast", s.coast}};
}

}  // namespace detail

/// Parse and validate. Throws ValidationError naming the offending field.
inline Scenario from_json(const Json& j) {
  using detail::Object;
  Object root(j, "", {"units", "lagrangian", "worldline", "analysis", "quadrature", "tolerances"});
  Scenario s;

  if (root.has("units")) {
    Object u(root.raw("units"), "units", {"c"});
    s.c = detail::positive(u.number("c", 1.0), "units.c");
  }

  {
    Object l(root.raw("lagrangian"), "lagrangian", {"dimension", "terms"});
    if (l.has("dimension")) {
      const std::size_t d = l.count("dimension");
      if (d != 2 && d != 4) throw ValidationError(l.at("dimension"), "must be 2 or 4");
      s.lagrangian.dimension = d;
    }
    const Json& terms = l.raw("terms");
    if (!terms.is_array() || terms.empty()) throw ValidationError(l.at("terms"), "expected a non-empty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      s.lagrangian.terms.push_back(detail::parse_term(terms[i], detail::index_path("lagrangian.terms", i)));
    }
  }

  if (root.has("worldline")) s.worldline = detail::parse_worldline(root.raw("worldline"), "worldline", s.c);

  if (root.has("analysis")) {
    Object a(root.raw("analysis"), "analysis", {"deviation", "geodesic_check", "homogeneity_check", "twin", "sample"});
    s.analysis.deviation = a.flag("deviation", true);
    s.analysis.geodesic_check = a.flag("geodesic_check", false);
    if (a.has("homogeneity_check")) {
      Object h(a.raw("homogeneity_check"), a.at("homogeneity_check"), {"samples", "threshold"});
      HomogeneityCheckDecl hc;
      if (h.has("samples")) hc.samples = h.count("samples");
      if (hc.samples == 0) throw ValidationError(h.at("samples"), "must be >= 1");
      hc.threshold = detail::positive(h.number("threshold", hc.threshold), h.at("threshold"));
      s.analysis.homogeneity_check = hc;
    }
    if (a.has("twin")) {
      Object t(a.raw("twin"), a.at("twin"), {"v_over_c", "m", "accel_radius", "coast"});
      s.analysis.twin = detail::parse_twin_params(t, s.c);
    }
    if (a.has("sample")) {
      Object sm(a.raw("sample"), a.at("sample"), {"n"});
      const std::size_t n = sm.count("n");
      if (n < 2) throw ValidationError(sm.at("n"), "must be >= 2");
      s.analysis.sample = n;
    }
  }

  if (root.has("quadrature")) {
    Object q(root.raw("quadrature"), "quadrature", {"abs_tol", "rel_tol", "max_depth", "rule"});
    s.quadrature.abs_tol = q.number("abs_tol", s.quadrature.abs_tol);
    s.quadrature.rel_tol = q.number("rel_tol", s.quadrature.rel_tol);
    if (q.has("max_depth")) s.quadrature.max_depth = static_cast<int>(q.count("max_depth"));
    if (q.has("rule")) {
      const std::string rule = q.text("rule");
      if (rule == "adaptive_simpson") s.quadrature.rule = QuadratureRule::AdaptiveSimpson;
      else if (rule == "gauss_kronrod_15") s.quadrature.rule = QuadratureRule::GaussKronrod15;
      else throw ValidationError(q.at("rule"), "expected adaptive_simpson or gauss_kronrod_15");
    }
    if (!(s.quadrature.abs_tol > 0.0)) throw ValidationError("quadrature.abs_tol", "must be > 0");
    if (!(s.quadrature.rel_tol > 0.0)) throw ValidationError("quadrature.rel_tol", "must be > 0");
    if (s.quadrature.max_depth < 1 || s.quadrature.max_depth > 60) {
      throw ValidationError("quadrature.max_depth", "must lie in [1, 60]");
    }
  }

  if (root.has("tolerances")) {
    Object t(root.raw("tolerances"), "tolerances", {"geo_tol", "tol_join"});
    s.tolerances.geo_tol = t.number("geo_tol", s.tolerances.geo_tol);
    s.tolerances.tol_join = t.number("tol_join", s.tolerances.tol_join);
    if (!(s.tolerances.geo_tol >= 0.0)) throw ValidationError("tolerances.geo_tol", "must be >= 0");
    if (!(s.tolerances.tol_join > 0.0)) throw ValidationError("tolerances.tol_join", "must be > 0");
  }
  return s;
}

inline Json to_json(const Scenario& s) {
  Json terms = Json::array();
  for (const auto& t : s.lagrangian.terms) {
    terms.push_back(std::visit(
        [](const auto& d) -> Json {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, FreeParticleTerm>) {
            return {{"type", "free_particle"}, {"m", d.m}};
          } else if constexpr (std::is_same_v<T, VectorPotentialTerm>) {
            Json comps = Json::array();
            for (const auto& c : d.components) comps.push_back({{"axis", c.axis}, {"coefficients", c.coefficients}});
            return {{"type", "vector_potential"}, {"components", comps}};
          } else if constexpr (std::is_same_v<T, StaticPotentialTerm>) {
            return {{"type", "static_potential_1p1"}, {"coefficients", d.coefficients}};
          } else {
            return {{"type", "quadratic_kinetic"}, {"k", d.k}};
          }
        },
        t));
  }
  Json lag{{"terms", terms}};
  if (s.lagrangian.dimension) lag["dimension"] = *s.lagrangian.dimension;

  Json analysis{{"deviation", s.analysis.deviation}, {"geodesic_check", s.analysis.geodesic_check}};
  if (s.analysis.homogeneity_check) {
    analysis["homogeneity_check"] = {{"samples", s.analysis.homogeneity_check->samples},
                                     {"threshold", s.analysis.homogeneity_check->threshold}};
  }
  if (s.analysis.twin) analysis["twin"] = detail::twin_json(*s.analysis.twin);
  if (s.analysis.sample) analysis["sample"] = {{"n", *s.analysis.sample}};

  Json j{{"units", {{"c", s.c}}},
         {"lagrangian", lag},
         {"analysis", analysis},
         {"quadrature",
          {{"abs_tol", s.quadrature.abs_tol},
           {"rel_tol", s.quadrature.rel_tol},
           {"max_depth", s.quadrature.max_depth},
           {"rule", s.quadrature.rule == QuadratureRule::AdaptiveSimpson ? "adaptive_simpson" : "gauss_kronrod_15"}}},
         {"tolerances", {{"geo_tol", s.tolerances.geo_tol}, {"tol_join", s.tolerances.tol_join}}}};
  if (s.worldline) j["worldline"] = detail::worldline_json(*s.worldline);
  return j;
}

inline Scenario parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

inline Scenario load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("<file>", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

/// Spacetime dimension implied by the scenario: explicit, then vector potential, then worldline, then 2.
inline std::size_t dimension_of(const Scenario& s);

namespace detail {

inline std::optional<std::size_t> worldline_dimension(const WorldlineDecl& w) {
  return std::visit(
      [](const auto& d) -> std::optional<std::size_t> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StraightDecl>) return d.origin.size();
        else if constexpr (std::is_same_v<T, KnotsDecl>) return d.rows.front().size() - 1;
        else if constexpr (std::is_same_v<T, ConcatDecl>) return worldline_dimension(d.parts.front());
        else return std::size_t{2};
      },
      w.value);
}

inline Worldline build(const WorldlineDecl& w, const Scenario& s, const std::string& path) {
  return std::visit(
      [&](const auto& d) -> Worldline {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StraightDecl>) {
          return worldlines::straight(FourVector::from_range(d.origin), FourVector::from_range(d.velocity), d.domain[0],
                                      d.domain[1]);
        } else if constexpr (std::is_same_v<T, CircularArcDecl>) {
          if (d.v_over_c) return worldlines::circular_arc(0.0, std::atan(*d.v_over_c));
          return worldlines::circular_arc((*d.domain)[0], (*d.domain)[1]);
        } else if constexpr (std::is_same_v<T, HyperbolicBoostDecl>) {
          return worldlines::hyperbolic_boost(s.c, d.v_over_c * s.c, 0.0, d.T);
        } else if constexpr (std::is_same_v<T, CustomMonotoneDecl>) {
          scenarios::VelocityChangePath p;
          p.kind = scenarios::ProfileKind::CustomMonotone;
          p.v_over_c = d.v_over_c;
          p.c = s.c;
          p.profile = scenarios::VelocityProfile::polynomial(d.coefficients);
          return scenarios::build_velocity_change(p);
        } else if constexpr (std::is_same_v<T, TwinDecl>) {
          auto tw = scenarios::build_twin(d.params);
          return d.role == TwinRole::Traveler ? tw.traveler : tw.homebody;
        } else if constexpr (std::is_same_v<T, KnotsDecl>) {
          std::vector<std::pair<double, FourVector>> knots;
          for (const auto& row : d.rows) knots.emplace_back(row[0], FourVector::from_range(std::vector(row.begin() + 1, row.end())));
          return worldlines::sampled(knots);
        } else {
          std::vector<Worldline> parts;
          for (std::size_t i = 0; i < d.parts.size(); ++i) {
            parts.push_back(build(d.parts[i], s, index_path(path + ".concat", i)));
          }
          return concat(parts, s.tolerances.tol_join);
        }
      },
      w.value);
}

}  // namespace detail

inline std::size_t dimension_of(const Scenario& s) {
  if (s.lagrangian.dimension) return *s.lagrangian.dimension;
  for (const auto& t : s.lagrangian.terms) {
    if (const auto* vp = std::get_if<VectorPotentialTerm>(&t)) return vp->components.size();
  }
  if (s.worldline) {
    if (auto d = detail::worldline_dimension(*s.worldline)) return *d;
  }
  return 2;
}

/// Also checks the terms against the scenario dimension.
inline LagrangianSpec build_lagrangian(const Scenario& s) {
  const std::size_t dim = dimension_of(s);
  std::vector<LagrangianTerm> out;
  for (std::size_t i = 0; i < s.lagrangian.terms.size(); ++i) {
    const std::string path = detail::index_path("lagrangian.terms", i);
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, FreeParticleTerm>) {
            out.push_back(terms::FreeParticle{d.m});
          } else if constexpr (std::is_same_v<T, VectorPotentialTerm>) {
            if (d.components.size() != dim) throw ValidationError(path + ".components", "size differs from the dimension");
            std::vector<std::size_t> axes;
            std::vector<Polynomial> polys;
            for (const auto& c : d.components) {
              axes.push_back(c.axis);
              polys.emplace_back(c.coefficients);
            }
            out.push_back(terms::VectorPotential{VectorField::axis_polynomials(axes, polys)});
          } else if constexpr (std::is_same_v<T, StaticPotentialTerm>) {
            if (dim != 2) throw ValidationError(path + ".type", "static_potential_1p1 needs dimension 2");
            out.push_back(terms::StaticPotential1p1{Potential1D::polynomial(d.coefficients)});
          } else {
            out.push_back(terms::QuadraticKinetic{d.k});
          }
        },
        s.lagrangian.terms[i]);
  }
  return LagrangianSpec(std::move(out), s.c);
}

/// Geometry failures (kinks, gaps, non-timelike samples) are reported against `worldline`.
inline Worldline build_worldline(const Scenario& s) {
  if (!s.worldline) throw ValidationError("worldline", "required key missing");
  Worldline w = [&] {
    try {
      return detail::build(*s.worldline, s, "worldline");
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("worldline", e.what());
    }
  }();
  if (w.dim() != dimension_of(s)) throw ValidationError("worldline", "dimension differs from the Lagrangian's");
  return w;
}

}  // namespace geolag::scenario
