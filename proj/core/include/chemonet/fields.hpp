#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chemonet/grid.hpp"

namespace chemonet {

/// One array per arc, indexed j = 0 .. M_i + 1.
using ArcArrays = std::vector<std::vector<double>>;

ArcArrays zero_arrays(const GridSpec& grid);

/// Cell density u and flux v at one time level.
struct HyperbolicState {
  ArcArrays u;
  ArcArrays v;
  std::int64_t step = 0;
  double time = 0.0;
};

/// Chemoattractant concentration at one time level.
struct PhiState {
  ArcArrays phi;
};

/// Riemann invariants u+- = (u +- v / lambda) / 2.
inline double u_plus(double u, double v, double lambda) { return 0.5 * (u + v / lambda); }
inline double u_minus(double u, double v, double lambda) { return 0.5 * (u - v / lambda); }

}  // namespace chemonet
