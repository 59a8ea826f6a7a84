#pragma once

/**
 * Command implementations behind the `geolag` executable. Each command writes
 * its report to `out`, diagnostics to `err`, and returns the process exit code.
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <string>

#include "json.hpp"

#include "geolag/deviation.hpp"
#include "geolag/errors.hpp"
#include "geolag/lagrangian.hpp"
#include "geolag/scenario_file.hpp"
#include "geolag/scenarios.hpp"
#include "geolag/worldline.hpp"

namespace geolag::cli {

using Json = nlohmann::json;

enum ExitCode : int { kOk = 0, kBreach = 1, kValidation = 2, kNumerics = 3 };

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct GlobalOptions {
  std::optional<std::string> out;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> plot_csv;
};

/// 17 significant digits, enough for any double to read back exactly.
inline std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// A speed flag: a number, `th1`, or `tanh(<number>)`.
inline double parse_speed(const std::string& text) {
  static const std::regex tanh_form(R"(\s*tanh\(\s*([^()]+?)\s*\)\s*)");
  std::smatch m;
  std::string number = text;
  bool hyperbolic = false;
  if (text == "th1") {
    number = "1";
    hyperbolic = true;
  } else if (std::regex_match(text, m, tanh_form)) {
    number = m[1];
    hyperbolic = true;
  }
  double x = 0.0;
  std::size_t used = 0;
  try {
    x = std::stod(number, &used);
  } catch (const std::exception&) {
    throw ValidationError("--v", "expected a number, th1 or tanh(<number>), got '" + text + "'");
  }
  if (used != number.size()) throw ValidationError("--v", "trailing characters in '" + text + "'");
  const double beta = hyperbolic ? std::tanh(x) : x;
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("--v", "v/c must lie in (0, 1), got " + csv_number(beta));
  return beta;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("--out", "cannot write '" + path + "'");
  f << content;
}

/// Maps library exceptions onto the exit-code contract.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const NumericsError& e) {
    err << "numerics error: " << e.what() << " (partial estimate " << csv_number(e.estimate()) << ", error bound "
        << csv_number(e.error_bound()) << ")\n";
    return kNumerics;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  }
}

inline Json to_json(const DeviationReport& r, const Worldline& w) {
  Json segs = Json::array();
  for (std::size_t i = 0; i < r.per_segment.size(); ++i) {
    segs.push_back({{"label", w.segments()[i].label()}, {"value", r.per_segment[i]}});
  }
  return {{"total", r.total},           {"per_segment", segs},   {"error_estimate", r.error_estimate},
          {"geodesic", r.geodesic},     {"geo_tol", r.geo_tol},  {"form_mismatch", r.form_mismatch}};
}

inline Json to_json(const ProperLength& p) {
  return {{"length", p.length}, {"proper_time", p.proper_time}, {"error_estimate", p.error_estimate}};
}

inline Json to_json(const scenarios::TwinReport& r) {
  return {{"v_over_c", r.scenario.v_over_c},
          {"m", r.scenario.m},
          {"c", r.scenario.c},
          {"accel_radius", r.scenario.accel_radius},
          {"coast", r.scenario.coast},
          {"traveler",
           {{"deviation", r.traveler_deviation.total},
            {"error_estimate", r.traveler_deviation.error_estimate},
            {"phases", r.phase_deviation},
            {"lower_bound", r.traveler_lower_bound},
            {"proper", to_json(r.traveler_proper)}}},
          {"homebody",
           {{"deviation", r.homebody_deviation.total},
            {"error_estimate", r.homebody_deviation.error_estimate},
            {"proper", to_json(r.homebody_proper)}}},
          {"expected_traveler_deviation", r.expected_traveler_deviation},
          {"asymmetric", r.asymmetric}};
}

inline void emit_json(const GlobalOptions& opts, const Json& j) {
  if (opts.out) write_file(*opts.out, j.dump(2) + "\n");
}

/// `deviation <scenario>`: exit 1 only when `analysis.geodesic_check` is set and the path is not a geodesic.
inline int cmd_deviation(const std::string& path, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const scenario::Scenario s = scenario::load(path);
    const LagrangianSpec L = scenario::build_lagrangian(s);
    const Worldline w = scenario::build_worldline(s);
    const DeviationReport r = deviation(L, w, s.quadrature, s.tolerances.geo_tol);
    const ProperLength pl = proper_length(w, s.quadrature, s.c);

    out << "deviation: " << csv_number(r.total) << " (error estimate " << csv_number(r.error_estimate) << ")\n";
    for (std::size_t i = 0; i < r.per_segment.size(); ++i) {
      out << "  segment " << i << " [" << w.segments()[i].label() << "]: " << csv_number(r.per_segment[i]) << "\n";
    }
    out << "geodesic: " << (r.geodesic ? "true" : "false") << " (geo_tol " << csv_number(r.geo_tol) << ")\n";
    out << "proper time: " << csv_number(pl.proper_time) << "\n";

    Json j{{"command", "deviation"}, {"deviation", to_json(r, w)}, {"proper", to_json(pl)}};
    if (const double m = L.pure_free_particle_mass(); m > 0.0) {
      const double bound = deviation_lower_bound(w, m, s.c);
      out << "lower bound mc*rapidity: " << csv_number(bound) << "\n";
      j["lower_bound"] = bound;
    }
    emit_json(opts, j);
    if (s.analysis.geodesic_check && !r.geodesic) {
      err << "geodesic check failed: deviation " << csv_number(r.total) << " > geo_tol " << csv_number(r.geo_tol)
          << "\n";
      return static_cast<int>(kBreach);
    }
    return static_cast<int>(kOk);
  });
}

struct CheckResult {
  std::size_t samples = 0;
  double max_homogeneity = 0.0;  ///< max of homogeneity_residual/(1 + |L|)
  double max_hamiltonian = 0.0;  ///< max of |hamiltonian_residual|/(1 + |L|)
  double threshold = 0.0;
  bool pass = false;
};

/// Random (x, ẋ, λ): x in [−1, 1]^d, ẋ future timelike with |spatial speed| < 0.95c, λ log-uniform in [0.1, 10].
inline CheckResult euler_sweep(const LagrangianSpec& L, std::size_t dim, std::size_t n, std::uint64_t seed,
                               double threshold) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(0.0, 0.95);
  std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
  CheckResult r;
  r.samples = n;
  r.threshold = threshold;
  for (std::size_t i = 0; i < n; ++i) {
    FourVector x(dim), dir(dim), v(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = unit(rng);
    double len = 0.0;
    do {
      for (std::size_t k = 1; k < dim; ++k) dir[k] = unit(rng);
      len = euclidean_norm(dir);
    } while (len < 1e-3);
    const double beta = speed(rng);
    const double scale = std::exp(log_scale(rng));
    v[0] = scale * L.c();
    for (std::size_t k = 1; k < dim; ++k) v[k] = scale * L.c() * beta * dir[k] / len;
    const double lambda = std::exp(log_scale(rng));
    const double weight = 1.0 + std::abs(L.eval(x, v));
    r.max_homogeneity = std::max(r.max_homogeneity, homogeneity_residual(L, x, v, lambda) / weight);
    r.max_hamiltonian = std::max(r.max_hamiltonian, std::abs(hamiltonian_residual(L, x, v)) / weight);
  }
  r.pass = r.max_homogeneity <= threshold && r.max_hamiltonian <= threshold;
  return r;
}

/// `check <scenario>`: exit 0 iff both Euler-theorem residuals stay below the threshold.
inline int cmd_check(const std::string& path, std::optional<std::size_t> n, const GlobalOptions& opts,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const scenario::Scenario s = scenario::load(path);
    const LagrangianSpec L = scenario::build_lagrangian(s);
    const scenario::HomogeneityCheckDecl h = s.analysis.homogeneity_check.value_or(scenario::HomogeneityCheckDecl{});
    const std::size_t samples = n.value_or(h.samples);
    if (samples == 0) throw ValidationError("--n", "must be >= 1");
    const CheckResult r = euler_sweep(L, scenario::dimension_of(s), samples, opts.seed, h.threshold);

    out << "samples: " << r.samples << " (seed " << opts.seed << ")\n";
    out << "max homogeneity residual: " << csv_number(r.max_homogeneity) << "\n";
    out << "max hamiltonian residual: " << csv_number(r.max_hamiltonian) << "\n";
    out << "threshold: " << csv_number(r.threshold) << "\n";
    out << (r.pass ? "pass: Lagrangian is 1-homogeneous\n" : "FAIL: Lagrangian is not geometric\n");
    emit_json(opts, {{"command", "check"},
                     {"samples", r.samples},
                     {"seed", opts.seed},
                     {"max_homogeneity_residual", r.max_homogeneity},
                     {"max_hamiltonian_residual", r.max_hamiltonian},
                     {"threshold", r.threshold},
                     {"pass", r.pass}});
    return static_cast<int>(r.pass ? kOk : kBreach);
  });
}

struct TwinFlags {
  std::optional<std::string> v;
  std::optional<double> m;
  std::optional<double> c;
  std::optional<double> accel_radius;
  std::optional<double> coast;
  std::optional<std::string> scenario;
};

inline scenarios::TwinScenario resolve_twin(const TwinFlags& f) {
  scenarios::TwinScenario s;
  if (f.scenario) {
    const scenario::Scenario file = scenario::load(*f.scenario);
    if (file.analysis.twin) {
      s = *file.analysis.twin;
    } else if (file.worldline && std::holds_alternative<scenario::TwinDecl>(file.worldline->value)) {
      s = std::get<scenario::TwinDecl>(file.worldline->value).params;
    } else {
      throw ValidationError("analysis.twin", "scenario has no twin parameters");
    }
  }
  if (f.v) s.v_over_c = parse_speed(*f.v);
  if (f.m) s.m = scenario::detail::positive(*f.m, "--m");
  if (f.c) s.c = scenario::detail::positive(*f.c, "--c");
  if (f.accel_radius) s.accel_radius = scenario::detail::positive(*f.accel_radius, "--accel-radius");
  if (f.coast) {
    if (!(*f.coast >= 0.0)) throw ValidationError("--coast", "must be >= 0");
    s.coast = *f.coast;
  }
  return s;
}

inline void write_twin_csv(const std::string& path, const scenarios::TwinWorldlines& tw, std::size_t n) {
  std::string csv = "role,t,x0,x1,v0,v1\n";
  auto dump = [&](const char* role, const Worldline& w) {
    for (double t : uniform_parameters(w, n)) {
      const Kinematics k = w.probe(t);
      csv += std::string(role) + "," + csv_number(t) + "," + csv_number(k.x[0]) + "," + csv_number(k.x[1]) + "," +
             csv_number(k.v[0]) + "," + csv_number(k.v[1]) + "\n";
    }
  };
  dump("traveler", tw.traveler);
  dump("homebody", tw.homebody);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("--plot-csv", "cannot write '" + path + "'");
  f << csv;
}

/// `twin`: deviation and proper time of both twins, with the traveler's per-phase breakdown.
inline int cmd_twin(const TwinFlags& flags, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const scenarios::TwinScenario s = resolve_twin(flags);
    try {
      s.validate();
    } catch (const DomainError& e) {
      throw ValidationError("--v", e.what());
    }
    const scenarios::TwinReport r = scenarios::twin_report(s);

    out << "twin paradox, v/c = " << csv_number(s.v_over_c) << ", m = " << csv_number(s.m)
        << ", c = " << csv_number(s.c) << "\n";
    out << "traveler deviation: " << csv_number(r.traveler_deviation.total) << " (expected 4mc*argtanh(v/c) = "
        << csv_number(r.expected_traveler_deviation) << ")\n";
    out << "  outbound acceleration: " << csv_number(r.phase_deviation[0]) << "\n";
    out << "  turnaround: " << csv_number(r.phase_deviation[1]) << "\n";
    out << "  braking: " << csv_number(r.phase_deviation[2]) << "\n";
    out << "homebody deviation: " << csv_number(r.homebody_deviation.total) << "\n";
    out << "traveler proper time: " << csv_number(r.traveler_proper.proper_time) << "\n";
    out << "homebody proper time: " << csv_number(r.homebody_proper.proper_time) << "\n";

    emit_json(opts, {{"command", "twin"}, {"twin", to_json(r)}});
    if (opts.plot_csv) write_twin_csv(*opts.plot_csv, scenarios::build_twin(s), 201);
    return static_cast<int>(kOk);
  });
}

inline constexpr std::size_t kDefaultSampleCount = 101;

inline std::string sample_csv(const LagrangianSpec& L, const Worldline& w, std::size_t n) {
  const std::size_t d = w.dim();
  std::string csv = "t";
  for (std::size_t k = 0; k < d; ++k) csv += ",x" + std::to_string(k);
  for (std::size_t k = 0; k < d; ++k) csv += ",v" + std::to_string(k);
  csv += ",elnorm\n";
  for (double t : uniform_parameters(w, n)) {
    const Kinematics k = w.probe(t);
    csv += csv_number(t);
    for (std::size_t i = 0; i < d; ++i) csv += "," + csv_number(k.x[i]);
    for (std::size_t i = 0; i < d; ++i) csv += "," + csv_number(k.v[i]);
    csv += "," + csv_number(norm(el_vector(L, w, t))) + "\n";
  }
  return csv;
}

/// `sample <scenario>`: CSV of position, velocity and Euler-Lagrange vector norm at n parameters.
inline int cmd_sample(const std::string& path, std::optional<std::size_t> n, const GlobalOptions& opts,
                      std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const scenario::Scenario s = scenario::load(path);
    const LagrangianSpec L = scenario::build_lagrangian(s);
    const Worldline w = scenario::build_worldline(s);
    const std::size_t count = n.value_or(s.analysis.sample.value_or(kDefaultSampleCount));
    if (count < 2) throw ValidationError("--n", "must be >= 2");
    const std::string csv = sample_csv(L, w, count);
    out << csv;
    if (opts.out) write_file(*opts.out, csv);
    return static_cast<int>(kOk);
  });
}

}  // namespace geolag::cli
