#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "chemonet/fields.hpp"
#include "chemonet/grid.hpp"
#include "chemonet/network.hpp"

namespace chemonet {

/// Time-invariant part of the Crank-Nicolson system for phi.
///
/// Unknowns are all phi_i^j (arcs in index order, points in index order).
/// Interior points carry the CN row, outer ends the one-sided Neumann row,
/// node ends the Kedem-Katchalsky row scaled by eta = 1 + (2/3)(h/D) sum kappa.
struct CNSystem {
  Eigen::SparseMatrix<double> matrix;
  std::vector<std::size_t> offset;  ///< first unknown of each arc
  std::vector<double> eta_left;     ///< eta at x = 0 (1 for outer ends)
  std::vector<double> eta_right;    ///< eta at x = L

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Throws ConfigError when an arc has fewer than two interior points (the
/// boundary stencil needs phi^1 and phi^2).
CNSystem assemble_cn_system(const Network& net, const GridSpec& grid);

/// Known right-hand side of the CN system for one step.
Eigen::VectorXd cn_rhs(const Network& net, const GridSpec& grid, const CNSystem& sys,
                       const PhiState& phi, const ArcArrays& u_old, const ArcArrays& u_new);

/// Factored CN solver; the factorization is built once and reused every step.
class ChemoFieldSolver {
 public:
  ChemoFieldSolver(const Network& net, const GridSpec& grid);
  ~ChemoFieldSolver();
  ChemoFieldSolver(ChemoFieldSolver&&) noexcept;
  ChemoFieldSolver& operator=(ChemoFieldSolver&&) noexcept;

  const CNSystem& system() const { return sys_; }

  /// Advances phi from n to n + 1; u_new must already be the level n + 1
  /// density. Throws ConfigError if the solve fails.
  PhiState step(const PhiState& phi, const ArcArrays& u_old, const ArcArrays& u_new) const;

  /// Replaces the end values of `phi` so the outer and node rows hold,
  /// keeping interior values fixed.
  PhiState enforce_boundary_relations(const PhiState& phi) const;

 private:
  struct Factor;
  Network net_;
  GridSpec grid_;
  CNSystem sys_;
  std::unique_ptr<Factor> lu_;
  std::unique_ptr<Factor> projection_;
};

/// Second-order phi_x: central differences inside, three-point one-sided
/// formulas at both ends. Throws ConfigError when fewer than 4 points exist.
std::vector<double> reconstruct_phi_gradient(std::span<const double> phi, double h);

/// f = phi_x * u, pointwise per arc.
ArcArrays chemotactic_source(const ArcArrays& u, const ArcArrays& phi_x);

/// Gradient of every arc.
ArcArrays phi_gradient(const PhiState& phi, const GridSpec& grid);

/// Quadrature of phi that the CN scheme conserves exactly when u = 0, b = 0
/// and kappa is symmetric: h (3/2 phi^1 + phi^2 + ... + phi^{M-1} + 3/2 phi^M)
/// summed over arcs. It is second-order accurate, like the trapezoid rule.
double phi_conserved_mass(const PhiState& phi, const GridSpec& grid);

/// Trapezoid quadrature of phi over the network.
double phi_trapezoid_mass(const PhiState& phi, const GridSpec& grid);

}  // namespace chemonet
