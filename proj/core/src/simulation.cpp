#include "chemonet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "chemonet/errors.hpp"
#include "chemonet/steady_state.hpp"

namespace chemonet {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::FinalTime:
      return "final_time";
    case Termination::Steady:
      return "steady";
    case Termination::Blowup:
      return "blowup";
  }
  return "unknown";
}

std::int64_t steps_per_interval(double interval, double k) {
  if (!(interval > 0.0)) return 1;
  return std::max<std::int64_t>(1, std::llround(interval / k));
}

HyperbolicState initial_state(const RunConfig& config, const Network& net, const GridSpec& grid) {
  HyperbolicState s;
  s.u = zero_arrays(grid);
  s.v = zero_arrays(grid);
  for (const auto& ic : config.initial) {
    const std::size_t i = net.index_of(ic.arc);
    const double length = net.arc(i).length;
    for (std::size_t j = 0; j < s.u[i].size(); ++j) {
      s.u[i][j] = ic.density(grid.arcs[i].x(j), length);
    }
  }
  return s;
}

PhiState initial_phi(const RunConfig& config, const Network& net, const GridSpec& grid,
                     const HyperbolicState& s) {
  PhiState p;
  p.phi = zero_arrays(grid);
  for (const auto& ic : config.initial) {
    const std::size_t i = net.index_of(ic.arc);
    if (ic.phi == PhiRule::EqualToU) {
      p.phi[i] = s.u[i];
    } else {
      std::fill(p.phi[i].begin(), p.phi[i].end(), ic.phi_level);
    }
  }
  return p;
}

namespace {

Network checked_network(const RunConfig& c) {
  if (!(c.time_step > 0.0)) throw ConfigError("time_step must be positive");
  if (!(c.final_time > 0.0)) throw ConfigError("final_time must be positive");
  if (!(c.cfl > 0.0 && c.cfl <= 0.5)) throw ConfigError("cfl must lie in (0, 1/2]");
  return Network(c.network);
}

}  // namespace

Simulation::Simulation(RunConfig config)
    : config_(std::move(config)),
      net_(checked_network(config_)),
      grid_(build_grid(net_, config_.time_step, config_.cfl)),
      scheme_(net_, grid_) {
  if (const auto problems = validate_config(config_); !problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  if (config_.model.kind == ModelKind::Full) {
    solver_ = std::make_unique<ChemoFieldSolver>(net_, grid_);
  }
  if (config_.model.kind == ModelKind::Simplified) alpha_ = config_.model.alpha;

  now_ = initial_state(config_, net_, grid_);
  phi_ = initial_phi(config_, net_, grid_, now_);
  if (solver_) phi_ = solver_->enforce_boundary_relations(phi_);
  next_ = now_;
  update_source();
}

std::vector<std::string> Simulation::warnings() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < net_.arc_count(); ++i) {
    if (!check_monotonicity(grid_.arcs[i].h, grid_.k, net_.arc(i).lambda)) {
      out.push_back("arc " + std::to_string(net_.arc(i).id) +
                    ": monotonicity bounds h <= 4 lambda, k <= 4h/(h + 4 lambda) not met");
    }
  }
  return out;
}

void Simulation::reset(const HyperbolicState& s, const PhiState& phi) {
  now_ = s;
  next_ = s;
  phi_ = phi;
  update_source();
}

void Simulation::update_source() {
  switch (config_.model.kind) {
    case ModelKind::Full:
      f_ = chemotactic_source(now_.u, phi_gradient(phi_, grid_));
      break;
    case ModelKind::Simplified:
      f_ = now_.u;
      for (std::size_t i = 0; i < f_.size(); ++i) {
        for (double& x : f_[i]) x *= alpha_[i];
      }
      break;
    case ModelKind::Linear:
      f_ = zero_arrays(grid_);
      break;
  }
}

double Simulation::step() {
  scheme_.step_into(now_, f_, next_);
  double residual = 0.0;
  if (solver_) {
    PhiState phi_next = solver_->step(phi_, now_.u, next_.u);
    residual = steady_residual(now_, next_, &phi_, &phi_next, grid_.k);
    phi_ = std::move(phi_next);
  } else {
    residual = steady_residual(now_, next_, nullptr, nullptr, grid_.k);
  }
  std::swap(now_, next_);
  update_source();
  return residual;
}

DiagnosticsRecord Simulation::record() const { return make_record(now_, net_, grid_); }

RunResult Simulation::run(const Observer& on_sample, const SnapshotHook& on_snapshot) {
  RunResult res;
  const double k = grid_.k;
  const auto total = static_cast<std::int64_t>(std::ceil(config_.final_time / k - 1e-9));
  const double diag_interval = config_.output.diagnostics_every > 0.0
                                   ? config_.output.diagnostics_every
                                   : (config_.output.snapshot_every > 0.0
                                          ? config_.output.snapshot_every
                                          : config_.final_time / 200.0);
  const std::int64_t diag_every = steps_per_interval(diag_interval, k);
  const std::int64_t snap_every = config_.output.snapshot_every > 0.0
                                      ? steps_per_interval(config_.output.snapshot_every, k)
                                      : 0;

  DiagnosticsRecord first = record();
  res.initial_mass = first.total_mass;
  BlowupDetector detector(first.max_abs_u, config_.blowup_factor);
  const auto sample = [&](DiagnosticsRecord r) {
    res.diagnostics.push_back(r);
    if (on_sample) on_sample(*this, r);
  };
  sample(first);
  if (on_snapshot) on_snapshot(*this);

  const std::int64_t start = now_.step;
  bool steady = false;
  for (std::int64_t n = 0; n < total; ++n) {
    res.last_residual = step();
    const std::int64_t taken = now_.step - start;
    if (detector.check(now_)) {
      res.reason = Termination::Blowup;
      res.blowup = detector.fired();
      break;
    }
    const double mass = discrete_mass(now_.u, grid_);
    const double scale = std::max(std::abs(res.initial_mass), 1e-300);
    res.max_relative_mass_drift =
        std::max(res.max_relative_mass_drift, std::abs(mass - res.initial_mass) / scale);
    if (config_.stop_when_steady && res.last_residual <= config_.steady_tolerance) {
      steady = true;
      res.reason = Termination::Steady;
      break;
    }
    if (n + 1 < total) {
      if (taken % diag_every == 0) sample(record());
      if (snap_every > 0 && taken % snap_every == 0 && on_snapshot) on_snapshot(*this);
    }
  }

  DiagnosticsRecord last = record();
  last.steady = steady;
  last.blowup = res.reason == Termination::Blowup;
  sample(last);
  if (on_snapshot) on_snapshot(*this);

  res.steps = now_.step - start;
  res.end_time = now_.time;
  res.final_mass = last.total_mass;
  res.summary = summarize(now_, grid_, net_, last.blowup, steady);
  res.regime = classify_regime(res.summary);
  return res;
}

// ---------------------------------------------------------------------------

void write_snapshot_header(std::ostream& os) { os << "t,arc_id,x,u,v,phi\n"; }

void write_snapshot(std::ostream& os, const Simulation& sim) {
  const auto& s = sim.state();
  const auto& phi = sim.phi().phi;
  const auto& grid = sim.grid();
  os << std::setprecision(12);
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const ArcId id = sim.network().arc(i).id;
    for (std::size_t j = 0; j < s.u[i].size(); ++j) {
      os << s.time << ',' << id << ',' << grid.arcs[i].x(j) << ',' << s.u[i][j] << ','
         << s.v[i][j] << ',' << phi[i][j] << '\n';
    }
  }
}

void write_diagnostics_header(std::ostream& os) {
  os << "t,total_mass,energy,max_abs_u,min_u,steady,blowup\n";
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r) {
  os << std::setprecision(15) << r.time << ',' << r.total_mass << ',' << r.energy << ','
     << r.max_abs_u << ',' << r.min_u << ',' << (r.steady ? 1 : 0) << ',' << (r.blowup ? 1 : 0)
     << '\n';
}

RunResult run_with_output(Simulation& sim, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream snaps(dir / "snapshots.csv");
  std::ofstream diags(dir / "diagnostics.csv");
  if (!snaps || !diags) throw ConfigError("cannot write output files in " + dir.string());
  write_snapshot_header(snaps);
  write_diagnostics_header(diags);
  return sim.run([&](const Simulation&, const DiagnosticsRecord& r) { write_diagnostics_row(diags, r); },
                 [&](const Simulation& s) { write_snapshot(snaps, s); });
}

}  // namespace chemonet
