#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chemonet/fields.hpp"
#include "chemonet/grid.hpp"
#include "chemonet/network.hpp"

namespace chemonet {

/// Stationary solution u_i(x) = C_i exp(alpha_i x / lambda_i^2), v_i = 0 of
/// the model with constant phi_x = alpha_i on each arc.
struct SimplifiedStationary {
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<double> amplitude;   ///< C_i
  std::vector<double> normalized;  ///< C~_i = u_i(node) / lambda_i, a kernel vector of the node matrix

  double u(std::size_t arc, double x) const;
  /// Exact integral of the profiles over the network.
  double mass(const Network& net) const;
  /// Profiles sampled on the grid points; v and phi_x follow from v = 0, phi_x = alpha.
  ArcArrays sample(const GridSpec& grid) const;
};

/// Closed-form stationary state for a single inner node whose arcs all end at
/// an outer boundary (the two-arc network being the basic case), or for a lone
/// arc with two outer ends. The free scale is fixed by the total mass mu0.
///
/// Throws PreconditionError when the topology is not of that form or some
/// |alpha_i| >= lambda_i, and AmbiguityError when the kernel of the node
/// matrix is not one-dimensional.
SimplifiedStationary simplified_stationary(const Network& net, std::span<const double> alpha,
                                           double mu0);

/// Constant-by-arc state (U, 0, a U / b) of the full model.
struct ConstantSteadyState {
  double density = 0.0;  ///< U = mu0 / total length
  double phi = 0.0;      ///< (a / b) U
};

/// Throws PreconditionError when some node is not dissipative or the ratio
/// a_i / b_i differs between arcs.
ConstantSteadyState constant_steady_state(const Network& net, double mu0);

/// max |w^{n+1} - w^n| / k over all points of all arcs, w in {u, v, phi}.
/// `phi_*` may be null when only the hyperbolic part is tracked.
double steady_residual(const HyperbolicState& now, const HyperbolicState& next,
                       const PhiState* phi_now, const PhiState* phi_next, double k);

}  // namespace chemonet
