#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chemonet/chemo_field.hpp"
#include "chemonet/config.hpp"
#include "chemonet/diagnostics.hpp"
#include "chemonet/fields.hpp"
#include "chemonet/grid.hpp"
#include "chemonet/network.hpp"
#include "chemonet/scheme.hpp"

namespace chemonet {

enum class Termination { FinalTime, Steady, Blowup };

std::string to_string(Termination t);

struct RunResult {
  Termination reason = Termination::FinalTime;
  std::int64_t steps = 0;
  double end_time = 0.0;
  std::optional<BlowupReport> blowup;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double max_relative_mass_drift = 0.0;  ///< over every step taken
  double last_residual = 0.0;
  RunSummary summary;
  Regime regime = Regime::Stable;
  std::vector<DiagnosticsRecord> diagnostics;
};

/// Coupled time integrator. One step is
///   (u, v)^{n+1} = hyperbolic step with f^n,
///   phi^{n+1}    = Crank-Nicolson step with u^n and u^{n+1},
///   f^{n+1}      = phi_x^{n+1} u^{n+1}
/// for the full model; the simplified model uses f = alpha u and the linear
/// model f = 0, neither of which evolves phi.
class Simulation {
 public:
  /// Throws ValidationError / StructuralError / GridError / ConfigError.
  explicit Simulation(RunConfig config);

  const RunConfig& config() const { return config_; }
  const Network& network() const { return net_; }
  const GridSpec& grid() const { return grid_; }
  const HyperbolicScheme& scheme() const { return scheme_; }
  const HyperbolicState& state() const { return now_; }
  const PhiState& phi() const { return phi_; }
  const ArcArrays& source() const { return f_; }
  bool evolves_phi() const { return solver_ != nullptr; }

  /// Arcs where h <= 4 lambda or k <= 4h / (h + 4 lambda) fails.
  std::vector<std::string> warnings() const;

  /// Replaces the current state (time is kept from `s`) and rebuilds f.
  void reset(const HyperbolicState& s, const PhiState& phi);

  /// Advances one step and returns the steady residual of that step.
  double step();

  DiagnosticsRecord record() const;

  using Observer = std::function<void(const Simulation&, const DiagnosticsRecord&)>;
  using SnapshotHook = std::function<void(const Simulation&)>;

  /// Runs until final_time, a steady state (if stop_when_steady) or blow-up.
  /// `on_sample` fires at the first state, every diagnostics interval and the
  /// last state; `on_snapshot` likewise on the snapshot interval.
  RunResult run(const Observer& on_sample = {}, const SnapshotHook& on_snapshot = {});

 private:
  void update_source();

  RunConfig config_;
  Network net_;
  GridSpec grid_;
  HyperbolicScheme scheme_;
  std::unique_ptr<ChemoFieldSolver> solver_;
  std::vector<double> alpha_;
  HyperbolicState now_;
  HyperbolicState next_;
  PhiState phi_;
  ArcArrays f_;
};

/// Initial (u, v = 0) and phi following the config, before any boundary projection.
HyperbolicState initial_state(const RunConfig& config, const Network& net, const GridSpec& grid);
PhiState initial_phi(const RunConfig& config, const Network& net, const GridSpec& grid,
                     const HyperbolicState& s);

/// Steps between samples for a simulated-time interval (at least 1).
std::int64_t steps_per_interval(double interval, double k);

// CSV output -----------------------------------------------------------------

void write_snapshot_header(std::ostream& os);
/// Rows t, arc_id, x, u, v, phi for every grid point.
void write_snapshot(std::ostream& os, const Simulation& sim);

void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r);

/// Runs `sim` writing snapshots.csv and diagnostics.csv into `dir` (created if
/// needed). Snapshots follow config.output.snapshot_every.
RunResult run_with_output(Simulation& sim, const std::filesystem::path& dir);

}  // namespace chemonet
