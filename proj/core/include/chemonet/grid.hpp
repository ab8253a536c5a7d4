#pragma once

#include <cstddef>
#include <vector>

#include "chemonet/network.hpp"

namespace chemonet {

struct ArcGrid {
  double h = 0.0;  ///< space step, stored as L / (M + 1)
  int interior = 0;  ///< M; points are j = 0 .. M + 1

  std::size_t points() const { return static_cast<std::size_t>(interior) + 2; }
  double x(std::size_t j) const { return static_cast<double>(j) * h; }
};

/// Space/time discretization shared by all solvers.
///
/// The node closures are consistent only when h_i = 2 k lambda_i on every arc,
/// i.e. a Courant number k lambda_i / h_i of 1/2. `cfl` keeps that number
/// adjustable for mesh studies; it is 1/2 unless explicitly overridden.
struct GridSpec {
  double k = 0.0;
  double cfl = 0.5;
  std::vector<ArcGrid> arcs;

  std::size_t total_points() const;
};

/// Builds h_i = k lambda_i / cfl and M_i from L_i = (M_i + 1) h_i.
/// Throws GridError when some L_i / h_i is not an integer (1e-9 relative);
/// the message lists the two nearest admissible k for each offending arc.
GridSpec build_grid(const Network& net, double k, double cfl = 0.5);

/// Largest k <= k_max for which every arc has an integral point count and at
/// least `min_interior` interior points. Throws GridError if none is found.
double admissible_time_step(const Network& net, double k_max, double cfl = 0.5,
                            int min_interior = 2);

/// Nearest admissible k values (below and above) for a single arc.
struct NearbySteps {
  double smaller_k = 0.0;  ///< 0 when no admissible value exists
  double larger_k = 0.0;
};
NearbySteps nearest_admissible_steps(const ArcSpec& arc, double k, double cfl = 0.5);

}  // namespace chemonet
