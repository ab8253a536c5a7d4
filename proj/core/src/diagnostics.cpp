#include "chemonet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "chemonet/errors.hpp"

namespace chemonet {

double discrete_mass(const ArcArrays& u, const GridSpec& grid) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& a = u[i];
    double s = 0.5 * (a.front() + a.back());
    for (std::size_t j = 1; j + 1 < a.size(); ++j) s += a[j];
    total += grid.arcs[i].h * s;
  }
  return total;
}

double discrete_energy(const ArcArrays& u, const ArcArrays& v, const Network& net,
                       const GridSpec& grid) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double inv_l2 = 1.0 / (net.arc(i).lambda * net.arc(i).lambda);
    const auto e = [&](std::size_t j) { return u[i][j] * u[i][j] + v[i][j] * v[i][j] * inv_l2; };
    const std::size_t last = u[i].size() - 1;
    double s = 0.5 * (e(0) + e(last));
    for (std::size_t j = 1; j < last; ++j) s += e(j);
    total += grid.arcs[i].h * s;
  }
  return std::sqrt(total);
}

DiagnosticsRecord make_record(const HyperbolicState& s, const Network& net, const GridSpec& grid) {
  DiagnosticsRecord r;
  r.time = s.time;
  r.total_mass = discrete_mass(s.u, grid);
  r.energy = discrete_energy(s.u, s.v, net, grid);
  r.max_abs_u = 0.0;
  r.min_u = std::numeric_limits<double>::infinity();
  for (const auto& a : s.u) {
    for (double x : a) {
      r.max_abs_u = std::max(r.max_abs_u, std::abs(x));
      r.min_u = std::min(r.min_u, x);
    }
  }
  return r;
}

double l1_self_convergence_error(std::span<const double> coarse, std::span<const double> fine,
                                 double h_coarse) {
  if (coarse.size() < 2 || fine.size() != 2 * (coarse.size() - 1) + 1) {
    throw StructuralError("l1_self_convergence_error: fine grid is not a 2-refinement");
  }
  const std::size_t m = coarse.size() - 2;
  double s = 0.0;
  for (std::size_t l = 0; l <= m; ++l) s += std::abs(coarse[l] - fine[2 * l]);
  return h_coarse * s;
}

ConvergenceOrder convergence_order(double error_h, double error_half) {
  if (error_half == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {std::log2(error_h / error_half), false};
}

ConvergenceOrder network_order(std::span<const double> errors_h,
                               std::span<const double> errors_half) {
  ConvergenceOrder best{std::numeric_limits<double>::infinity(), true};
  for (std::size_t i = 0; i < errors_h.size(); ++i) {
    const ConvergenceOrder o = convergence_order(errors_h[i], errors_half[i]);
    if (o.exact) continue;
    if (best.exact || o.value < best.value) best = o;
  }
  return best;
}

BlowupDetector::BlowupDetector(double initial_max_abs_u, double factor)
    : threshold_(factor * std::max(initial_max_abs_u, 1e-300)) {}

std::optional<BlowupReport> detect_blowup(const HyperbolicState& s, double threshold) {
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    for (std::size_t j = 0; j < s.u[i].size(); ++j) {
      const double u = s.u[i][j];
      if (!std::isfinite(u) || !std::isfinite(s.v[i][j]) || std::abs(u) > threshold) {
        return BlowupReport{s.time, i, j, u};
      }
    }
  }
  return std::nullopt;
}

std::optional<BlowupReport> BlowupDetector::check(const HyperbolicState& s) {
  if (!fired_) fired_ = detect_blowup(s, threshold_);
  return fired_;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Blowup:
      return "blowup";
    case Regime::BoundarySpike:
      return "boundary_spike";
    case Regime::Stable:
      return "stable";
  }
  return "unknown";
}

RunSummary summarize(const HyperbolicState& final_state, const GridSpec& grid, const Network& net,
                     bool blowup, bool steady) {
  RunSummary r;
  r.blowup = blowup;
  r.steady = steady;
  double length = 0.0;
  for (const auto& a : net.arcs()) length += a.length;
  r.mean_density = discrete_mass(final_state.u, grid) / length;
  r.peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < final_state.u.size(); ++i) {
    for (std::size_t j = 0; j < final_state.u[i].size(); ++j) {
      if (final_state.u[i][j] > r.peak) {
        r.peak = final_state.u[i][j];
        r.peak_arc = i;
        r.peak_index = j;
        r.peak_arc_points = final_state.u[i].size();
      }
    }
  }
  return r;
}

Regime classify_regime(const RunSummary& run, const SpikeCriterion& spike) {
  if (run.blowup) return Regime::Blowup;
  if (run.peak_arc_points > 0 && run.mean_density > 0.0) {
    const std::size_t last = run.peak_arc_points - 1;
    const bool near_end =
        run.peak_index <= spike.cells || last - run.peak_index <= spike.cells;
    if (near_end && run.peak > spike.mean_factor * run.mean_density) return Regime::BoundarySpike;
  }
  return Regime::Stable;
}

}  // namespace chemonet
