#include "chemonet/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "chemonet/errors.hpp"

namespace chemonet {

namespace {

// int_0^L exp(alpha x / lambda^2) dx
double profile_integral(double alpha, double lambda, double length) {
  if (alpha == 0.0) return length;
  const double s = alpha / (lambda * lambda);
  return std::expm1(s * length) / s;
}

}  // namespace

double SimplifiedStationary::u(std::size_t arc, double x) const {
  return amplitude[arc] * std::exp(alpha[arc] * x / (lambda[arc] * lambda[arc]));
}

double SimplifiedStationary::mass(const Network& net) const {
  double m = 0.0;
  for (std::size_t i = 0; i < amplitude.size(); ++i) {
    m += amplitude[i] * profile_integral(alpha[i], lambda[i], net.arc(i).length);
  }
  return m;
}

ArcArrays SimplifiedStationary::sample(const GridSpec& grid) const {
  ArcArrays out = zero_arrays(grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = u(i, grid.arcs[i].x(j));
  }
  return out;
}

SimplifiedStationary simplified_stationary(const Network& net, std::span<const double> alpha,
                                           double mu0) {
  const std::size_t n = net.arc_count();
  if (alpha.size() != n) {
    throw PreconditionError("simplified_stationary: one alpha per arc is required");
  }
  SimplifiedStationary s;
  s.alpha.assign(alpha.begin(), alpha.end());
  for (std::size_t i = 0; i < n; ++i) {
    s.lambda.push_back(net.arc(i).lambda);
    if (std::abs(alpha[i]) >= s.lambda[i]) {
      throw PreconditionError("simplified_stationary: |alpha| must be below lambda on arc " +
                              std::to_string(net.arc(i).id));
    }
  }

  // u_i at the node end per unit of the free scale.
  std::vector<double> node_value(n, 1.0);
  if (net.node_count() == 0) {
    if (n != 1) throw PreconditionError("simplified_stationary: network without nodes must be a single arc");
  } else {
    if (net.node_count() != 1 || net.node(0).degree() != n) {
      throw PreconditionError(
          "simplified_stationary: closed form needs one node with every arc attached once");
    }
    const NodeSpec& node = net.node(0);
    const int dim = kernel_dimension(node, net.arcs());
    if (dim != 1) {
      throw AmbiguityError("simplified_stationary: node matrix kernel has dimension " +
                           std::to_string(dim));
    }
    const Eigen::VectorXd ker = kernel_vector(node, net.arcs());
    const auto& local = net.node_arcs(0);
    for (std::size_t l = 0; l < n; ++l) {
      node_value[local[l]] = net.arc(local[l]).lambda * ker(static_cast<Eigen::Index>(l));
    }
  }

  s.amplitude.resize(n);
  s.normalized.resize(n);
  double unit_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const ArcSpec& arc = net.arc(i);
    const bool node_at_right = net.node_count() > 0 && !net.attachment(i, End::Right).outer;
    const double grow = std::exp(alpha[i] * arc.length / (arc.lambda * arc.lambda));
    s.amplitude[i] = node_at_right ? node_value[i] / grow : node_value[i];
    unit_mass += s.amplitude[i] * profile_integral(alpha[i], arc.lambda, arc.length);
  }
  const double scale = mu0 / unit_mass;
  for (std::size_t i = 0; i < n; ++i) {
    s.amplitude[i] *= scale;
    s.normalized[i] = scale * node_value[i] / net.arc(i).lambda;
  }
  return s;
}

ConstantSteadyState constant_steady_state(const Network& net, double mu0) {
  if (!net.dissipative()) {
    throw PreconditionError(
        "constant_steady_state: transmission coefficients are not dissipative, so no non-trivial "
        "constant stationary solution exists");
  }
  double length = 0.0;
  double ratio = 0.0;
  for (std::size_t i = 0; i < net.arc_count(); ++i) {
    const ArcSpec& arc = net.arc(i);
    if (arc.degradation <= 0.0) {
      throw PreconditionError("constant_steady_state: arc " + std::to_string(arc.id) +
                              " has no degradation, so a / b is undefined");
    }
    const double r = arc.production / arc.degradation;
    if (i == 0) {
      ratio = r;
    } else if (std::abs(r - ratio) > 1e-12 * std::max(1.0, std::abs(ratio))) {
      throw PreconditionError("constant_steady_state: a / b differs between arcs");
    }
    length += arc.length;
  }
  ConstantSteadyState c;
  c.density = mu0 / length;
  c.phi = ratio * c.density;
  return c;
}

double steady_residual(const HyperbolicState& now, const HyperbolicState& next,
                       const PhiState* phi_now, const PhiState* phi_next, double k) {
  double r = 0.0;
  const auto scan = [&r](const ArcArrays& a, const ArcArrays& b) {
    if (a.size() != b.size()) throw StructuralError("steady_residual: shape mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != b[i].size()) throw StructuralError("steady_residual: shape mismatch");
      for (std::size_t j = 0; j < a[i].size(); ++j) r = std::max(r, std::abs(b[i][j] - a[i][j]));
    }
  };
  scan(now.u, next.u);
  scan(now.v, next.v);
  if (phi_now && phi_next) scan(phi_now->phi, phi_next->phi);
  return r / k;
}

}  // namespace chemonet
