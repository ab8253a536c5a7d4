#include "chemonet/grid.hpp"

#include <cmath>
#include <sstream>

#include "chemonet/errors.hpp"

namespace chemonet {

namespace {

constexpr double kDivisibilityTol = 1e-9;

// Number of cells L / h for the given step, and whether it is integral.
double cell_count(const ArcSpec& arc, double k, double cfl) {
  return arc.length * cfl / (k * arc.lambda);
}

bool integral(double n) { return std::abs(n - std::round(n)) <= kDivisibilityTol * n; }

}  // namespace

std::size_t GridSpec::total_points() const {
  std::size_t n = 0;
  for (const auto& a : arcs) n += a.points();
  return n;
}

NearbySteps nearest_admissible_steps(const ArcSpec& arc, double k, double cfl) {
  const double n = cell_count(arc, k, cfl);
  NearbySteps out;
  const double lo = std::floor(n);
  const double hi = std::ceil(n) == lo ? lo + 1.0 : std::ceil(n);
  if (lo >= 1.0) out.larger_k = arc.length * cfl / (arc.lambda * lo);
  out.smaller_k = arc.length * cfl / (arc.lambda * hi);
  return out;
}

GridSpec build_grid(const Network& net, double k, double cfl) {
  if (!(k > 0.0)) throw GridError("time step must be positive");
  if (!(cfl > 0.0)) throw GridError("Courant number must be positive");
  GridSpec grid;
  grid.k = k;
  grid.cfl = cfl;
  std::ostringstream problems;
  bool failed = false;
  for (const auto& arc : net.arcs()) {
    const double n = cell_count(arc, k, cfl);
    const double cells = std::round(n);
    if (!integral(n) || cells < 2.0) {
      const NearbySteps near = nearest_admissible_steps(arc, k, cfl);
      problems << "\n  arc " << arc.id << ": L/h = " << n << " is not an integer >= 2"
               << "; nearest admissible k: " << near.smaller_k;
      if (near.larger_k > 0.0) problems << ", " << near.larger_k;
      failed = true;
      continue;
    }
    ArcGrid g;
    g.interior = static_cast<int>(cells) - 1;
    g.h = arc.length / cells;
    grid.arcs.push_back(g);
  }
  if (failed) {
    throw GridError("time step " + std::to_string(k) + " does not fit the arcs:" + problems.str());
  }
  return grid;
}

double admissible_time_step(const Network& net, double k_max, double cfl, int min_interior) {
  if (!(k_max > 0.0)) throw GridError("time step must be positive");
  const ArcSpec& first = net.arc(0);
  const double start = std::ceil(cell_count(first, k_max, cfl) * (1.0 - 1e-12));
  const double limit = std::max(start, 1.0) * 4096.0;
  for (double cells = std::max(start, 1.0); cells <= limit; cells += 1.0) {
    const double k = first.length * cfl / (first.lambda * cells);
    bool ok = true;
    for (const auto& arc : net.arcs()) {
      const double n = cell_count(arc, k, cfl);
      if (!integral(n) || std::round(n) < min_interior + 1) {
        ok = false;
        break;
      }
    }
    if (ok) return k;
  }
  throw GridError("no admissible time step below " + std::to_string(k_max) +
                  " (arc length/speed ratios are incommensurate)");
}

}  // namespace chemonet
