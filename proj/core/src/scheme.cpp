#include "chemonet/scheme.hpp"

#include <cmath>

#include "chemonet/errors.hpp"

namespace chemonet {

ArcArrays zero_arrays(const GridSpec& grid) {
  ArcArrays out;
  out.reserve(grid.arcs.size());
  for (const auto& g : grid.arcs) out.emplace_back(g.points(), 0.0);
  return out;
}

CharacteristicStencil roe_characteristic_stencil() {
  CharacteristicStencil s;
  // index 0 -> l = -1, 1 -> l = 0, 2 -> l = +1
  s.b[0] << 0.0, 0.0, 1.0, -1.0;
  s.b[1] << -1.0, 1.0, 1.0, -1.0;
  s.b[2] << -1.0, 1.0, 0.0, 0.0;
  for (auto& m : s.b) m *= 0.25;
  s.d[0] << 0.0, 0.0, 0.0, 1.0;
  s.d[1] << 1.0, 0.0, 0.0, 1.0;
  s.d[2] << 1.0, 0.0, 0.0, 0.0;
  for (auto& m : s.d) m *= 0.5;
  return s;
}

SchemeCoefficients coefficients_from_characteristic(const CharacteristicStencil& s,
                                                    double lambda) {
  Eigen::Matrix2d r;
  r << 1.0, 1.0, -lambda, lambda;
  const Eigen::Matrix2d r_inv = r.inverse();
  SchemeCoefficients c;
  for (int l = -1; l <= 1; ++l) {
    const auto idx = static_cast<std::size_t>(l + 1);
    // R X R^{-1} = 1/2 ((b_uu, b_uv / lambda), (lambda b_vu, b_vv))
    const Eigen::Matrix2d bt = 2.0 * r * s.b[idx] * r_inv;
    c.beta_uu[l] = bt(0, 0);
    c.beta_uv[l] = bt(0, 1) * lambda;
    c.beta_vu[l] = bt(1, 0) / lambda;
    c.beta_vv[l] = bt(1, 1);
    const Eigen::Matrix2d dt = 2.0 * r * s.d[idx] * r_inv;
    c.gamma_u[l] = dt(0, 1) * lambda;
    c.gamma_v[l] = dt(1, 1);
  }
  return c;
}

SchemeCoefficients roe_aho_coefficients(double lambda) {
  SchemeCoefficients c = coefficients_from_characteristic(roe_characteristic_stencil(), lambda);
  // The similarity transform is exact in rational arithmetic; snap the
  // floating-point result to the nearest multiple of 1/4.
  for (Stencil* st : {&c.beta_uu, &c.beta_uv, &c.beta_vu, &c.beta_vv, &c.gamma_u, &c.gamma_v}) {
    for (double& w : st->w) w = std::round(w * 4.0) / 4.0;
  }
  return c;
}

bool second_order_node_conditions(const SchemeCoefficients& c, double tol) {
  return std::abs(c.beta_uu[1] - c.beta_uu[-1]) <= tol &&
         std::abs(c.beta_uv[1] - c.beta_uv[-1] - 1.0) <= tol &&
         std::abs(c.gamma_u[-1] - c.gamma_u[1] - 1.0) <= tol;
}

bool stationary_third_order_conditions(const SchemeCoefficients& c, double tol) {
  return std::abs(c.beta_uu[1]) <= tol && std::abs(c.beta_uu[-1]) <= tol &&
         std::abs(c.beta_uv[1] - 0.5) <= tol && std::abs(c.beta_uv[-1] + 0.5) <= tol &&
         std::abs(c.gamma_u[1] + 0.5) <= tol && std::abs(c.gamma_u[-1] - 0.5) <= tol;
}

bool check_monotonicity(double h, double k, double lambda) {
  return h <= 4.0 * lambda && k <= 4.0 * h / (h + 4.0 * lambda);
}

// ---------------------------------------------------------------------------

HyperbolicScheme::HyperbolicScheme(const Network& net, const GridSpec& grid)
    : net_(net), grid_(grid) {
  coeffs_.reserve(net.arc_count());
  for (const auto& arc : net.arcs()) coeffs_.push_back(roe_aho_coefficients(arc.lambda));
}

HyperbolicScheme::HyperbolicScheme(const Network& net, const GridSpec& grid,
                                   std::vector<SchemeCoefficients> coefficients)
    : net_(net), grid_(grid), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != net.arc_count()) {
    throw StructuralError("one coefficient set per arc is required");
  }
}

void HyperbolicScheme::interior_step(const HyperbolicState& now, const ArcArrays& f,
                                     HyperbolicState& next) const {
  for (std::size_t i = 0; i < net_.arc_count(); ++i) {
    const double lambda = net_.arc(i).lambda;
    const double h = grid_.arcs[i].h;
    const double k = grid_.k;
    const SchemeCoefficients& c = coeffs_[i];
    const auto& u = now.u[i];
    const auto& v = now.v[i];
    const auto& fi = f[i];
    auto& un = next.u[i];
    auto& vn = next.v[i];
    const double adv = k / (2.0 * h);
    const double visc = lambda * k / (2.0 * h);
    const std::size_t m = static_cast<std::size_t>(grid_.arcs[i].interior);
    for (std::size_t j = 1; j <= m; ++j) {
      double su = 0.0;
      double sv = 0.0;
      for (int l = -1; l <= 1; ++l) {
        const std::size_t jl = j + static_cast<std::size_t>(l + 1) - 1;
        su += c.beta_uu[l] * u[jl] + (c.beta_uv[l] * v[jl] + c.gamma_u[l] * fi[jl]) / lambda;
        sv += lambda * c.beta_vu[l] * u[jl] + c.beta_vv[l] * v[jl] + c.gamma_v[l] * fi[jl];
      }
      un[j] = u[j] - adv * (v[j + 1] - v[j - 1]) + visc * (u[j + 1] - 2.0 * u[j] + u[j - 1]) +
              0.5 * k * su;
      vn[j] = v[j] - lambda * lambda * adv * (u[j + 1] - u[j - 1]) +
              visc * (v[j + 1] - 2.0 * v[j] + v[j - 1]) + 0.5 * k * sv;
    }
  }
}

void HyperbolicScheme::outer_boundary_step(const HyperbolicState& now, const ArcArrays& f,
                                           std::size_t arc, End end,
                                           HyperbolicState& next) const {
  if (!net_.attachment(arc, end).outer) {
    throw StructuralError("arc " + std::to_string(net_.arc(arc).id) +
                          ": end is attached to a node, not an outer boundary");
  }
  const double lambda = net_.arc(arc).lambda;
  const double h = grid_.arcs[arc].h;
  const double k = grid_.k;
  const SchemeCoefficients& c = coeffs_[arc];
  const auto& u = now.u[arc];
  const auto& v = now.v[arc];
  const auto& fi = f[arc];
  const double nu = lambda * k / h;
  // Each closure cancels exactly the mass flux of the interior scheme through
  // this end. The v terms at the end itself vanish once v = 0 is imposed.
  if (end == End::Left) {
    next.u[arc][0] = (1.0 - nu - k * c.beta_uu[-1]) * u[0] + k * (lambda / h + c.beta_uu[1]) * u[1] -
                     k * (1.0 / h - c.beta_uv[1] / lambda) * v[1] -
                     k * (1.0 / h + c.beta_uv[-1] / lambda) * v[0] +
                     k / lambda * (c.gamma_u[1] * fi[1] - c.gamma_u[-1] * fi[0]);
    next.v[arc][0] = 0.0;
  } else {
    const std::size_t e = grid_.arcs[arc].points() - 1;
    next.u[arc][e] = (1.0 - nu - k * c.beta_uu[1]) * u[e] +
                     k * (lambda / h + c.beta_uu[-1]) * u[e - 1] +
                     k * (1.0 / h + c.beta_uv[-1] / lambda) * v[e - 1] +
                     k * (1.0 / h - c.beta_uv[1] / lambda) * v[e] -
                     k / lambda * (c.gamma_u[1] * fi[e] - c.gamma_u[-1] * fi[e - 1]);
    next.v[arc][e] = 0.0;
  }
}

double HyperbolicScheme::arriving_numerator(const HyperbolicState& now, const ArcArrays& f,
                                            std::size_t arc, bool incoming) const {
  const double lambda = net_.arc(arc).lambda;
  const double h = grid_.arcs[arc].h;
  const double k = grid_.k;
  const SchemeCoefficients& c = coeffs_[arc];
  const auto& u = now.u[arc];
  const auto& v = now.v[arc];
  const auto& fi = f[arc];
  const double two_nu = 2.0 * lambda / h;
  if (incoming) {
    const std::size_t e = grid_.arcs[arc].points() - 1;
    const double pe = u_plus(u[e], v[e], lambda);
    const double me = u_minus(u[e], v[e], lambda);
    const double pi = u_plus(u[e - 1], v[e - 1], lambda);
    const double mi = u_minus(u[e - 1], v[e - 1], lambda);
    return pe * (1.0 - k * c.beta_uu[1] - k * c.beta_uv[1]) +
           me * (1.0 - k * two_nu - k * c.beta_uu[1] + k * c.beta_uv[1]) +
           k * pi * (two_nu + c.beta_uu[-1] + c.beta_uv[-1]) +
           k * mi * (c.beta_uu[-1] - c.beta_uv[-1]) -
           k / lambda * (c.gamma_u[1] * fi[e] - c.gamma_u[-1] * fi[e - 1]);
  }
  const double p0 = u_plus(u[0], v[0], lambda);
  const double m0 = u_minus(u[0], v[0], lambda);
  const double p1 = u_plus(u[1], v[1], lambda);
  const double m1 = u_minus(u[1], v[1], lambda);
  return p0 * (1.0 - k * two_nu - k * c.beta_uu[-1] - k * c.beta_uv[-1]) +
         m0 * (1.0 - k * c.beta_uu[-1] + k * c.beta_uv[-1]) +
         k * p1 * (c.beta_uu[1] + c.beta_uv[1]) +
         k * m1 * (two_nu + c.beta_uu[1] - c.beta_uv[1]) +
         k / lambda * (c.gamma_u[1] * fi[1] - c.gamma_u[-1] * fi[0]);
}

void HyperbolicScheme::node_step(const HyperbolicState& now, const ArcArrays& f,
                                 std::size_t node, HyperbolicState& next) const {
  const NodeSpec& spec = net_.node(node);
  const auto& arcs = net_.node_arcs(node);
  const std::size_t n = arcs.size();

  // Phase 1: characteristics entering the node, from level-n data.
  std::vector<double> arriving(n);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t a = arcs[l];
    double weighted = grid_.arcs[a].h;
    for (std::size_t m = 0; m < n; ++m) {
      weighted += grid_.arcs[arcs[m]].h *
                  spec.xi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l));
    }
    arriving[l] = grid_.arcs[a].h / weighted * arriving_numerator(now, f, a, spec.is_incoming(l));
  }

  // Phase 2: transmission at level n + 1 for the characteristics leaving it.
  for (std::size_t l = 0; l < n; ++l) {
    double leaving = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      leaving += spec.xi(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) * arriving[m];
    }
    const std::size_t a = arcs[l];
    const double lambda = net_.arc(a).lambda;
    if (spec.is_incoming(l)) {
      const std::size_t e = grid_.arcs[a].points() - 1;
      next.u[a][e] = arriving[l] + leaving;
      next.v[a][e] = lambda * (arriving[l] - leaving);
    } else {
      next.u[a][0] = arriving[l] + leaving;
      next.v[a][0] = lambda * (leaving - arriving[l]);
    }
  }
}

void HyperbolicScheme::step_into(const HyperbolicState& now, const ArcArrays& f,
                                 HyperbolicState& next) const {
  if (next.u.size() != now.u.size()) {
    next.u = now.u;
    next.v = now.v;
  }
  interior_step(now, f, next);
  for (std::size_t i = 0; i < net_.arc_count(); ++i) {
    if (net_.attachment(i, End::Left).outer) outer_boundary_step(now, f, i, End::Left, next);
    if (net_.attachment(i, End::Right).outer) outer_boundary_step(now, f, i, End::Right, next);
  }
  for (std::size_t p = 0; p < net_.node_count(); ++p) node_step(now, f, p, next);
  next.step = now.step + 1;
  next.time = static_cast<double>(next.step) * grid_.k;
}

HyperbolicState HyperbolicScheme::step(const HyperbolicState& now, const ArcArrays& f) const {
  HyperbolicState next;
  next.u = now.u;
  next.v = now.v;
  step_into(now, f, next);
  return next;
}

}  // namespace chemonet
