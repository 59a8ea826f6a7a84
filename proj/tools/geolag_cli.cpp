// geolag: deviation of worldlines under geometric Lagrangians.
//
//   geolag deviation scenarios/circular_arc.json --out result.json
//   geolag check scenarios/quadratic_kinetic.json --seed 7
//   geolag twin --v th1 --plot-csv twin.csv
//   geolag sample scenarios/circular_arc.json --n 101

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "geolag/cli.hpp"

int main(int argc, char** argv) {
  using namespace geolag::cli;

  CLI::App app{"Deviation of relativistic worldlines from geodesic motion"};
  app.require_subcommand(1);
  GlobalOptions opts;
  std::string out_path, plot_path;
  app.add_option("--out", out_path, "write the JSON result (CSV for sample) to this file");
  app.add_option("--seed", opts.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--plot-csv", plot_path, "write plot samples as CSV to this file");

  std::string scenario_path;
  std::optional<std::size_t> n;

  auto* dev = app.add_subcommand("deviation", "integrate the deviation of the scenario's worldline")->fallthrough();
  dev->add_option("scenario", scenario_path, "scenario JSON file")->required();

  auto* check = app.add_subcommand("check", "sample the Euler-theorem residuals of the scenario's Lagrangian")->fallthrough();
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  check->add_option("--n", n, "number of random samples");

  TwinFlags twin_flags;
  auto* twin = app.add_subcommand("twin", "twin paradox: deviation and proper time of both twins")->fallthrough();
  twin->add_option("--v", twin_flags.v, "traveler speed v/c: a number, th1, or tanh(<x>)");
  twin->add_option("--m", twin_flags.m, "mass");
  twin->add_option("--c", twin_flags.c, "speed of light");
  twin->add_option("--accel-radius", twin_flags.accel_radius, "c^2 over the proper acceleration");
  twin->add_option("--coast", twin_flags.coast, "proper time coasting on each leg");
  twin->add_option("--scenario", twin_flags.scenario, "scenario JSON file with twin parameters");

  auto* sample = app.add_subcommand("sample", "CSV of the worldline and its Euler-Lagrange vector norm")->fallthrough();
  sample->add_option("scenario", scenario_path, "scenario JSON file")->required();
  sample->add_option("--n", n, "number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  if (!out_path.empty()) opts.out = out_path;
  if (!plot_path.empty()) opts.plot_csv = plot_path;

  if (dev->parsed()) return cmd_deviation(scenario_path, opts, std::cout, std::cerr);
  if (check->parsed()) return cmd_check(scenario_path, n, opts, std::cout, std::cerr);
  if (twin->parsed()) {
    if (!twin_flags.v && !twin_flags.scenario) twin_flags.v = "0.6";
    return cmd_twin(twin_flags, opts, std::cout, std::cerr);
  }
  return cmd_sample(scenario_path, n, opts, std::cout, std::cerr);
}
