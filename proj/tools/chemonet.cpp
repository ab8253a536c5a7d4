#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemonet/config.hpp"
#include "chemonet/errors.hpp"
#include "chemonet/experiments.hpp"
#include "chemonet/presets.hpp"
#include "chemonet/simulation.hpp"
#include "chemonet/steady_state.hpp"

namespace fs = std::filesystem;
using namespace chemonet;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kBlowup = 2;

struct Source {
  std::string config;
  std::string preset;
  std::optional<double> snapshot_every;
  std::optional<double> threshold;
  std::optional<double> final_time;

  void attach(CLI::App* app) {
    auto* c = app->add_option("--config", config, "JSON run configuration");
    auto* p = app->add_option("--preset", preset, "named preset instead of a config file");
    c->excludes(p);
    app->add_option("--snapshot-every", snapshot_every, "simulated time between snapshots");
    app->add_option("--threshold", threshold, "blow-up factor over the initial max |u|");
    app->add_option("--final-time", final_time, "override the final time");
  }

  RunConfig load() const {
    if (config.empty() && preset.empty()) throw ConfigError("either --config or --preset is required");
    RunConfig c = config.empty() ? chemonet::preset(preset) : load_config(config);
    if (snapshot_every) c.output.snapshot_every = *snapshot_every;
    if (threshold) c.blowup_factor = *threshold;
    if (final_time) c.final_time = *final_time;
    return c;
  }
};

void print_result(const RunResult& r) {
  std::cout << std::setprecision(10) << "termination: " << to_string(r.reason) << '\n'
            << "end_time: " << r.end_time << '\n'
            << "steps: " << r.steps << '\n'
            << "initial_mass: " << r.initial_mass << '\n'
            << "final_mass: " << r.final_mass << '\n'
            << "max_relative_mass_drift: " << r.max_relative_mass_drift << '\n'
            << "regime: " << to_string(r.regime) << '\n';
  if (r.blowup) {
    std::cout << "blowup_time: " << r.blowup->time << '\n'
              << "blowup_arc_index: " << r.blowup->arc << '\n'
              << "blowup_point: " << r.blowup->index << '\n';
  }
}

int cmd_validate(const Source& src) {
  const RunConfig c = src.load();
  const auto problems = validate_config(c);
  if (problems.empty()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const auto& p : problems) std::cout << p << '\n';
  return kConfigError;
}

int cmd_run(const Source& src, const std::string& out) {
  RunConfig c = src.load();
  if (!out.empty()) c.output.dir = out;
  Simulation sim(c);
  for (const auto& w : sim.warnings()) std::cerr << "warning: " << w << '\n';
  const RunResult r = c.output.dir.empty() ? sim.run() : run_with_output(sim, c.output.dir);
  print_result(r);
  return r.reason == Termination::Blowup ? kBlowup : kOk;
}

// max and L1 distance between the simulated density and an oracle profile
struct Distance {
  double max = 0.0;
  double l1 = 0.0;
};

Distance distance(const Simulation& sim, const ArcArrays& oracle) {
  Distance d;
  const auto& u = sim.state().u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double h = sim.grid().arcs[i].h;
    for (std::size_t j = 0; j < u[i].size(); ++j) {
      const double e = std::abs(u[i][j] - oracle[i][j]);
      d.max = std::max(d.max, e);
      const bool end = j == 0 || j + 1 == u[i].size();
      d.l1 += (end ? 0.5 : 1.0) * h * e;
    }
  }
  return d;
}

int cmd_steady(const Source& src) {
  const RunConfig c = src.load();
  Simulation sim(c);
  const RunResult r = sim.run();
  print_result(r);
  if (r.reason == Termination::Blowup) return kBlowup;

  const double mu0 = r.initial_mass;
  std::cout << std::setprecision(10);
  if (c.model.kind == ModelKind::Simplified) {
    const SimplifiedStationary s = simplified_stationary(sim.network(), c.model.alpha, mu0);
    const Distance d = distance(sim, s.sample(sim.grid()));
    for (std::size_t i = 0; i < s.amplitude.size(); ++i) {
      std::cout << "arc " << sim.network().arc(i).id << ": C = " << s.amplitude[i]
                << ", C~ = " << s.normalized[i] << '\n';
    }
    std::cout << "max_distance: " << d.max << "\nl1_distance: " << d.l1 << '\n';
    return kOk;
  }
  const ConstantSteadyState s = constant_steady_state(sim.network(), mu0);
  ArcArrays oracle = zero_arrays(sim.grid());
  for (auto& a : oracle) std::fill(a.begin(), a.end(), s.density);
  const Distance d = distance(sim, oracle);
  std::cout << "U: " << s.density << "\nphi: " << s.phi << "\nmax_distance: " << d.max
            << "\nl1_distance: " << d.l1 << '\n';
  return kOk;
}

int cmd_converge(const Source& src, int levels, const std::string& out) {
  const RunConfig c = src.load();
  const auto table = converge(c, levels);
  if (out.empty()) {
    write_convergence_csv(std::cout, table);
  } else {
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "convergence.csv");
    write_convergence_csv(os, table);
    std::cout << "wrote " << (fs::path(out) / "convergence.csv").string() << '\n';
  }
  return kOk;
}

int cmd_sweep(const Source& src, std::vector<double> l1, std::vector<double> l2, double xi11,
              const std::string& out) {
  const RunConfig c = src.load();
  const SweepRange defaults = regime_sweep_range();
  if (l1.empty()) l1 = defaults.lambda1;
  if (l2.empty()) l2 = defaults.lambda2;
  SweepOptions opt;
  opt.xi11 = xi11;
  const auto cells = sweep(c, l1, l2, opt);
  if (out.empty()) {
    write_sweep_csv(std::cout, cells);
  } else {
    fs::create_directories(out);
    std::ofstream os(fs::path(out) / "regimes.csv");
    write_sweep_csv(os, cells);
    std::cout << "wrote " << (fs::path(out) / "regimes.csv").string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chemotaxis on networks: hyperbolic density/flux with a diffusing chemoattractant"};
  app.require_subcommand(1);

  Source src;
  std::string out;

  auto* validate = app.add_subcommand("validate", "check a configuration without running it");
  src.attach(validate);

  auto* run = app.add_subcommand("run", "simulate and write snapshots/diagnostics");
  src.attach(run);
  run->add_option("--out", out, "output directory");

  auto* steady = app.add_subcommand("steady", "simulate and compare with the analytic steady state");
  src.attach(steady);

  int levels = 3;
  auto* conv = app.add_subcommand("converge", "self-convergence errors and orders");
  src.attach(conv);
  conv->add_option("--levels", levels, "number of error levels")->check(CLI::PositiveNumber);
  conv->add_option("--out", out, "output directory");

  std::vector<double> lambda1, lambda2;
  double xi11 = 0.96;
  auto* sw = app.add_subcommand("sweep", "regime map over (lambda1, lambda2)");
  src.attach(sw);
  sw->add_option("--lambda1", lambda1, "values of lambda1")->delimiter(',');
  sw->add_option("--lambda2", lambda2, "values of lambda2")->delimiter(',');
  sw->add_option("--xi11", xi11, "turnabout coefficient on arc 1");
  sw->add_option("--out", out, "output directory");

  auto* pre = app.add_subcommand("preset", "list or print presets");
  pre->require_subcommand(1);
  auto* list = pre->add_subcommand("list", "print preset names");
  std::string show_name;
  auto* show = pre->add_subcommand("show", "print a preset as JSON");
  show->add_option("name", show_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*validate) return cmd_validate(src);
    if (*run) return cmd_run(src, out);
    if (*steady) return cmd_steady(src);
    if (*conv) return cmd_converge(src, levels, out);
    if (*sw) return cmd_sweep(src, lambda1, lambda2, xi11, out);
    if (*list) {
      for (const auto& n : preset_names()) std::cout << n << '\n';
      return kOk;
    }
    if (*show) {
      std::cout << to_json(preset(show_name)) << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
