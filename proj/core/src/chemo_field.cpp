#include "chemonet/chemo_field.hpp"

#include <Eigen/SparseLU>

#include "chemonet/errors.hpp"

namespace chemonet {

struct ChemoFieldSolver::Factor {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

std::size_t end_index(const GridSpec& grid, std::size_t arc, End end) {
  return end == End::Left ? 0 : grid.arcs[arc].points() - 1;
}

// Appends the outer/node boundary row for one arc end. Returns eta.
double boundary_row(const Network& net, const GridSpec& grid, const std::vector<std::size_t>& off,
                    std::size_t arc, End end, Triplets& t) {
  const auto row = static_cast<int>(off[arc] + end_index(grid, arc, end));
  const int inward = end == End::Left ? 1 : -1;
  const int e = row;
  const Attachment& at = net.attachment(arc, end);
  double eta = 1.0;
  if (!at.outer) {
    const NodeSpec& node = net.node(at.node);
    const auto& arcs = net.node_arcs(at.node);
    const double c = 2.0 / 3.0 * grid.arcs[arc].h / net.arc(arc).diffusion;
    const auto l = static_cast<Eigen::Index>(at.local);
    for (std::size_t m = 0; m < arcs.size(); ++m) {
      const double kappa = node.kappa(l, static_cast<Eigen::Index>(m));
      if (kappa == 0.0 || m == at.local) continue;
      eta += c * kappa;
      const End other = node.is_incoming(m) ? End::Right : End::Left;
      t.emplace_back(row, static_cast<int>(off[arcs[m]] + end_index(grid, arcs[m], other)),
                     -c * kappa);
    }
  }
  t.emplace_back(row, e, eta);
  t.emplace_back(row, e + inward, -4.0 / 3.0);
  t.emplace_back(row, e + 2 * inward, 1.0 / 3.0);
  return eta;
}

std::vector<std::size_t> offsets(const GridSpec& grid) {
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (const auto& g : grid.arcs) {
    off.push_back(n);
    n += g.points();
  }
  off.push_back(n);
  return off;
}

void check_points(const Network& net, const GridSpec& grid) {
  for (std::size_t i = 0; i < grid.arcs.size(); ++i) {
    if (grid.arcs[i].interior < 2) {
      throw ConfigError("arc " + std::to_string(net.arc(i).id) +
                        ": the chemoattractant solver needs at least 2 interior points");
    }
  }
}

void factor(Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>& lu,
            const Eigen::SparseMatrix<double>& m) {
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    throw ConfigError("chemoattractant system is singular: " + lu.lastErrorMessage());
  }
}

}  // namespace

CNSystem assemble_cn_system(const Network& net, const GridSpec& grid) {
  check_points(net, grid);
  CNSystem sys;
  sys.offset = offsets(grid);
  const auto n = static_cast<int>(sys.offset.back());
  Triplets t;
  t.reserve(static_cast<std::size_t>(n) * 3 + 16);
  for (std::size_t i = 0; i < net.arc_count(); ++i) {
    const ArcSpec& arc = net.arc(i);
    const double h = grid.arcs[i].h;
    const double r = arc.diffusion * grid.k / (h * h);
    const double diag = 1.0 + r + 0.5 * arc.degradation * grid.k;
    const auto base = static_cast<int>(sys.offset[i]);
    for (int j = 1; j <= grid.arcs[i].interior; ++j) {
      t.emplace_back(base + j, base + j, diag);
      t.emplace_back(base + j, base + j - 1, -0.5 * r);
      t.emplace_back(base + j, base + j + 1, -0.5 * r);
    }
    sys.eta_left.push_back(boundary_row(net, grid, sys.offset, i, End::Left, t));
    sys.eta_right.push_back(boundary_row(net, grid, sys.offset, i, End::Right, t));
  }
  sys.offset.pop_back();
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(t.begin(), t.end());
  sys.matrix.makeCompressed();
  return sys;
}

Eigen::VectorXd cn_rhs(const Network& net, const GridSpec& grid, const CNSystem& sys,
                       const PhiState& phi, const ArcArrays& u_old, const ArcArrays& u_new) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size()));
  for (std::size_t i = 0; i < net.arc_count(); ++i) {
    const ArcSpec& arc = net.arc(i);
    const double h = grid.arcs[i].h;
    const double k = grid.k;
    const double half_r = 0.5 * arc.diffusion * k / (h * h);
    const auto& p = phi.phi[i];
    for (std::size_t j = 1; j <= static_cast<std::size_t>(grid.arcs[i].interior); ++j) {
      rhs(static_cast<Eigen::Index>(sys.offset[i] + j)) =
          p[j] - half_r * (-p[j + 1] + 2.0 * p[j] - p[j - 1]) +
          0.5 * arc.production * k * (u_new[i][j] + u_old[i][j]) -
          0.5 * arc.degradation * k * p[j];
    }
  }
  return rhs;
}

ChemoFieldSolver::ChemoFieldSolver(const Network& net, const GridSpec& grid)
    : net_(net), grid_(grid), sys_(assemble_cn_system(net, grid)) {
  lu_ = std::make_unique<Factor>();
  factor(lu_->lu, sys_.matrix);

  // Same boundary rows, identity on interior points.
  Triplets t;
  for (int r = 0; r < sys_.matrix.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys_.matrix, r); it; ++it) {
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  std::vector<bool> interior(sys_.size(), false);
  for (std::size_t i = 0; i < net.arc_count(); ++i) {
    for (int j = 1; j <= grid.arcs[i].interior; ++j) interior[sys_.offset[i] + j] = true;
  }
  Triplets kept;
  for (const auto& e : t) {
    if (!interior[static_cast<std::size_t>(e.row())]) kept.push_back(e);
  }
  for (std::size_t r = 0; r < interior.size(); ++r) {
    if (interior[r]) kept.emplace_back(static_cast<int>(r), static_cast<int>(r), 1.0);
  }
  Eigen::SparseMatrix<double> proj(sys_.matrix.rows(), sys_.matrix.cols());
  proj.setFromTriplets(kept.begin(), kept.end());
  proj.makeCompressed();
  projection_ = std::make_unique<Factor>();
  factor(projection_->lu, proj);
}

ChemoFieldSolver::~ChemoFieldSolver() = default;
ChemoFieldSolver::ChemoFieldSolver(ChemoFieldSolver&&) noexcept = default;
ChemoFieldSolver& ChemoFieldSolver::operator=(ChemoFieldSolver&&) noexcept = default;

namespace {

PhiState unpack(const Eigen::VectorXd& x, const CNSystem& sys, const GridSpec& grid) {
  PhiState out;
  out.phi.reserve(grid.arcs.size());
  for (std::size_t i = 0; i < grid.arcs.size(); ++i) {
    const auto begin = x.data() + sys.offset[i];
    out.phi.emplace_back(begin, begin + grid.arcs[i].points());
  }
  return out;
}

}  // namespace

PhiState ChemoFieldSolver::step(const PhiState& phi, const ArcArrays& u_old,
                                const ArcArrays& u_new) const {
  const Eigen::VectorXd rhs = cn_rhs(net_, grid_, sys_, phi, u_old, u_new);
  const Eigen::VectorXd x = lu_->lu.solve(rhs);
  if (lu_->lu.info() != Eigen::Success) {
    throw ConfigError("chemoattractant solve failed");
  }
  return unpack(x, sys_, grid_);
}

PhiState ChemoFieldSolver::enforce_boundary_relations(const PhiState& phi) const {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys_.size()));
  for (std::size_t i = 0; i < grid_.arcs.size(); ++i) {
    for (int j = 1; j <= grid_.arcs[i].interior; ++j) {
      rhs(static_cast<Eigen::Index>(sys_.offset[i] + static_cast<std::size_t>(j))) =
          phi.phi[i][static_cast<std::size_t>(j)];
    }
  }
  return unpack(projection_->lu.solve(rhs), sys_, grid_);
}

std::vector<double> reconstruct_phi_gradient(std::span<const double> phi, double h) {
  const std::size_t n = phi.size();
  if (n < 4) throw ConfigError("gradient reconstruction needs at least 2 interior points");
  std::vector<double> dx(n);
  const double inv = 1.0 / (2.0 * h);
  dx[0] = inv * (-phi[2] + 4.0 * phi[1] - 3.0 * phi[0]);
  for (std::size_t j = 1; j + 1 < n; ++j) dx[j] = inv * (phi[j + 1] - phi[j - 1]);
  dx[n - 1] = inv * (phi[n - 3] - 4.0 * phi[n - 2] + 3.0 * phi[n - 1]);
  return dx;
}

ArcArrays chemotactic_source(const ArcArrays& u, const ArcArrays& phi_x) {
  ArcArrays f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].size() != phi_x[i].size()) throw StructuralError("chemotactic_source: shape mismatch");
    f[i].resize(u[i].size());
    for (std::size_t j = 0; j < u[i].size(); ++j) f[i][j] = phi_x[i][j] * u[i][j];
  }
  return f;
}

ArcArrays phi_gradient(const PhiState& phi, const GridSpec& grid) {
  ArcArrays out;
  out.reserve(phi.phi.size());
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    out.push_back(reconstruct_phi_gradient(phi.phi[i], grid.arcs[i].h));
  }
  return out;
}

double phi_conserved_mass(const PhiState& phi, const GridSpec& grid) {
  double total = 0.0;
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    const auto& p = phi.phi[i];
    const std::size_t m = static_cast<std::size_t>(grid.arcs[i].interior);
    double s = 0.5 * (p[1] + p[m]);
    for (std::size_t j = 1; j <= m; ++j) s += p[j];
    total += grid.arcs[i].h * s;
  }
  return total;
}

double phi_trapezoid_mass(const PhiState& phi, const GridSpec& grid) {
  double total = 0.0;
  for (std::size_t i = 0; i < phi.phi.size(); ++i) {
    const auto& p = phi.phi[i];
    double s = 0.5 * (p.front() + p.back());
    for (std::size_t j = 1; j + 1 < p.size(); ++j) s += p[j];
    total += grid.arcs[i].h * s;
  }
  return total;
}

}  // namespace chemonet
