#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chemonet/config.hpp"
#include "chemonet/diagnostics.hpp"
#include "chemonet/simulation.hpp"

namespace chemonet {

struct SweepCell {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool skipped = false;
  std::string reason;  ///< why the cell was skipped
  Regime regime = Regime::Stable;
  Termination termination = Termination::FinalTime;
  double end_time = 0.0;
  double peak = 0.0;
  double mean_density = 0.0;
  double time_step = 0.0;
};

struct SweepOptions {
  double xi11 = 0.96;
  SpikeCriterion spike;
};

/// Reruns a two-arc config for every (lambda1, lambda2) pair. Each cell gets
/// dissipative coefficients from two_arc_dissipative_family(lambda1, lambda2,
/// xi11) and the largest admissible k keeping the arc-1 space step at or
/// below the base one. Cells whose xi11 is inadmissible are marked skipped.
std::vector<SweepCell> sweep(const RunConfig& base, const std::vector<double>& lambda1,
                             const std::vector<double>& lambda2, const SweepOptions& opt = {});

/// One cell of the sweep; `base` must have exactly two arcs and one node.
SweepCell sweep_cell(const RunConfig& base, double lambda1, double lambda2,
                     const SweepOptions& opt = {});

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

/// Per-level errors of a refinement study. Level l compares the run with
/// time step k / 2^l to the one with k / 2^{l+1}.
struct ConvergenceLevel {
  double h = 0.0;  ///< space step of arc 1 on the coarser grid
  std::vector<double> error_u, error_phi, error_v;  ///< per arc
  double total_u = 0.0, total_phi = 0.0, total_v = 0.0;
  std::optional<ConvergenceOrder> order_u, order_phi, order_v;  ///< against the previous level
};

/// Runs `base` at levels + 1 successive halvings of k (and hence h) to
/// final_time without steady stopping, and tabulates the L1 self-convergence
/// errors and orders. Throws GridError if a refinement breaks divisibility.
std::vector<ConvergenceLevel> converge(const RunConfig& base, int levels);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceLevel>& table);

}  // namespace chemonet
