#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemonet/fields.hpp"
#include "chemonet/grid.hpp"
#include "chemonet/network.hpp"

namespace chemonet {

/// One sampled row of the diagnostics time series.
struct DiagnosticsRecord {
  double time = 0.0;
  double total_mass = 0.0;
  double energy = 0.0;
  double max_abs_u = 0.0;
  double min_u = 0.0;
  bool steady = false;
  bool blowup = false;
};

/// Trapezoid mass sum_i h_i (u^0 / 2 + sum_j u^j + u^{M+1} / 2).
double discrete_mass(const ArcArrays& u, const GridSpec& grid);

/// (sum_i trapezoid of u^2 + v^2 / lambda_i^2)^{1/2}.
double discrete_energy(const ArcArrays& u, const ArcArrays& v, const Network& net,
                       const GridSpec& grid);

DiagnosticsRecord make_record(const HyperbolicState& s, const Network& net, const GridSpec& grid);

/// L1 self-convergence error on one arc between a run with step h and a run
/// with step h/2 at the same final time:
///   h * sum_{l=0}^{M} |w_l(h) - w_{2l}(h/2)|,
/// where M is the coarse interior count. Throws StructuralError unless the
/// fine array has 2(M + 1) + 1 points.
double l1_self_convergence_error(std::span<const double> coarse, std::span<const double> fine,
                                 double h_coarse);

/// log2(e(h) / e(h/2)).
struct ConvergenceOrder {
  double value = 0.0;
  bool exact = false;  ///< both errors zero, or the finer one is
};

ConvergenceOrder convergence_order(double error_h, double error_half);

/// Minimum over arcs of the per-arc orders; exact arcs are ignored unless all are.
ConvergenceOrder network_order(std::span<const double> errors_h, std::span<const double> errors_half);

struct BlowupReport {
  double time = 0.0;
  std::size_t arc = 0;
  std::size_t index = 0;
  double value = 0.0;
};

/// Fires on non-finite u/v or max |u| above `factor` times the initial max |u|.
class BlowupDetector {
 public:
  static constexpr double kDefaultFactor = 1e6;

  explicit BlowupDetector(double initial_max_abs_u, double factor = kDefaultFactor);

  double threshold() const { return threshold_; }

  /// Returns the first firing; later calls keep returning the same report.
  std::optional<BlowupReport> check(const HyperbolicState& s);
  const std::optional<BlowupReport>& fired() const { return fired_; }

 private:
  double threshold_;
  std::optional<BlowupReport> fired_;
};

/// Single-state check, without remembering earlier firings.
std::optional<BlowupReport> detect_blowup(const HyperbolicState& s, double threshold);

enum class Regime { Blowup, BoundarySpike, Stable };

std::string to_string(Regime r);

struct SpikeCriterion {
  double mean_factor = 10.0;  ///< peak must exceed this many times the mean density
  std::size_t cells = 2;      ///< peak must lie within this many cells of an arc end
};

/// What classify_regime needs to know about a finished run.
struct RunSummary {
  bool blowup = false;
  bool steady = false;
  double mean_density = 0.0;  ///< total mass / total length
  double peak = 0.0;          ///< max u at the end of the run
  std::size_t peak_arc = 0;
  std::size_t peak_index = 0;
  std::size_t peak_arc_points = 0;
};

RunSummary summarize(const HyperbolicState& final_state, const GridSpec& grid, const Network& net,
                     bool blowup, bool steady);

/// Blowup if the detector fired, BoundarySpike if the final peak sits within
/// `cells` of an arc end and exceeds `mean_factor` times the mean density,
/// Stable otherwise.
Regime classify_regime(const RunSummary& run, const SpikeCriterion& spike = {});

}  // namespace chemonet
