#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "chemonet/fields.hpp"
#include "chemonet/grid.hpp"
#include "chemonet/network.hpp"

namespace chemonet {

/// Weights for stencil offsets l = -1, 0, +1 (stored at index l + 1).
struct Stencil {
  std::array<double, 3> w{0.0, 0.0, 0.0};

  double operator[](int offset) const { return w[static_cast<std::size_t>(offset + 1)]; }
  double& operator[](int offset) { return w[static_cast<std::size_t>(offset + 1)]; }
  double sum() const { return w[0] + w[1] + w[2]; }
};

/// Source-term stencils of an asymptotic high order scheme, written in the
/// (u, v) variables of one arc.
struct SchemeCoefficients {
  Stencil beta_uu, beta_uv, beta_vu, beta_vv;
  Stencil gamma_u, gamma_v;
};

/// Characteristic-variable matrices B^l, D^l (l = -1, 0, 1) acting on
/// omega = (u-, u+).
struct CharacteristicStencil {
  std::array<Eigen::Matrix2d, 3> b;
  std::array<Eigen::Matrix2d, 3> d;
};

/// The Roe choice of B^l and D^l.
CharacteristicStencil roe_characteristic_stencil();

/// Transforms characteristic stencils to (u, v) weights through
/// R X R^{-1} with R = ((1, 1), (-lambda, lambda)).
SchemeCoefficients coefficients_from_characteristic(const CharacteristicStencil& s,
                                                    double lambda);

/// Roe AHO weights: beta_uv = (-1/2, 0, 1/2), beta_vv = (-1/2, -1, -1/2),
/// gamma_u = (1/2, 0, -1/2), gamma_v = (1/2, 1, 1/2), the rest zero.
SchemeCoefficients roe_aho_coefficients(double lambda);

/// beta^1_uu = beta^-1_uu, beta^1_uv - beta^-1_uv = 1, gamma^-1_u - gamma^1_u = 1.
bool second_order_node_conditions(const SchemeCoefficients& c, double tol = 1e-15);

/// beta^{+-1}_uu = 0, beta^1_uv = -beta^-1_uv = 1/2, gamma^1_u = -gamma^-1_u = -1/2.
bool stationary_third_order_conditions(const SchemeCoefficients& c, double tol = 1e-15);

/// h <= 4 lambda and k <= 4h / (h + 4 lambda).
bool check_monotonicity(double h, double k, double lambda);

/// Explicit AHO stepper for (u, v) on a network with mass-conserving outer
/// and node closures.
///
/// Every update reads only time-n data except the second node phase, which
/// uses the arriving characteristics already computed at n + 1. A step is:
/// interior points, outer ends, node phase 1, node phase 2.
class HyperbolicScheme {
 public:
  /// Roe weights on every arc.
  HyperbolicScheme(const Network& net, const GridSpec& grid);
  HyperbolicScheme(const Network& net, const GridSpec& grid,
                   std::vector<SchemeCoefficients> coefficients);

  const Network& network() const { return net_; }
  const GridSpec& grid() const { return grid_; }
  const SchemeCoefficients& coefficients(std::size_t arc) const { return coeffs_[arc]; }

  /// Fills next.u/next.v at j = 1 .. M for every arc.
  void interior_step(const HyperbolicState& now, const ArcArrays& f, HyperbolicState& next) const;

  /// Outer no-flux closure at one end; sets v = 0 and the mass-balancing u.
  /// Throws StructuralError if that end is attached to a node.
  void outer_boundary_step(const HyperbolicState& now, const ArcArrays& f, std::size_t arc,
                           End end, HyperbolicState& next) const;

  /// Transmission closure for every arc end meeting node `node`.
  void node_step(const HyperbolicState& now, const ArcArrays& f, std::size_t node,
                 HyperbolicState& next) const;

  /// Complete update from level n to n + 1.
  HyperbolicState step(const HyperbolicState& now, const ArcArrays& f) const;

  /// In-place variant reusing `next` storage.
  void step_into(const HyperbolicState& now, const ArcArrays& f, HyperbolicState& next) const;

 private:
  // Characteristic value arriving at the node from arc `arc` at level n + 1,
  // before normalization by h_i / (h_i + sum_j h_j xi_{j,i}).
  double arriving_numerator(const HyperbolicState& now, const ArcArrays& f, std::size_t arc,
                            bool incoming) const;

  Network net_;
  GridSpec grid_;
  std::vector<SchemeCoefficients> coeffs_;
};

}  // namespace chemonet
