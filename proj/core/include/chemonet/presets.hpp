#pragma once

#include <string>
#include <vector>

#include "chemonet/config.hpp"

namespace chemonet {

std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
RunConfig preset(const std::string& name);

/// Two arcs of lengths 6 and 2 meeting at one node, a = b = D = 1, mass 160
/// spread as a cosine perturbation of 20, dissipative coefficients from
/// two_arc_dissipative_family(lambda1, lambda2, xi11). `h1` is the space step
/// on arc 1; k = cfl * h1 / lambda1.
RunConfig two_arc_family(double lambda1, double lambda2, double h1, double cfl = 0.5,
                         double xi11 = 0.96);

/// Two unit arcs with lambda = 4 and total mass 120.056, with space step h.
RunConfig convergence_table2(double h);

/// Lambda ranges of the regime map.
struct SweepRange {
  std::vector<double> lambda1;
  std::vector<double> lambda2;
};
SweepRange regime_sweep_range();

/// One transmission coefficient of the 12-arc network, keyed by arc ids.
struct TableEntry {
  int node;
  int from;  ///< xi_{from, to}
  int to;
  double value;
};
/// All 64 coefficients, node by node (0 = S-W, 1 = S-E, 2 = N-E, 3 = N-W).
const std::vector<TableEntry>& twelve_arc_table();

}  // namespace chemonet
