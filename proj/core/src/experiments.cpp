#include "chemonet/experiments.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "chemonet/errors.hpp"
#include "chemonet/grid.hpp"

namespace chemonet {

SweepCell sweep_cell(const RunConfig& base, double lambda1, double lambda2,
                     const SweepOptions& opt) {
  if (base.network.arcs.size() != 2 || base.network.nodes.size() != 1) {
    throw ConfigError("sweep needs a two-arc, one-node configuration");
  }
  SweepCell cell;
  cell.lambda1 = lambda1;
  cell.lambda2 = lambda2;

  RunConfig c = base;
  c.output.dir.clear();
  c.network.arcs[0].lambda = lambda1;
  c.network.arcs[1].lambda = lambda2;
  try {
    c.network.nodes[0].xi = two_arc_dissipative_family(lambda1, lambda2, opt.xi11);
  } catch (const std::domain_error& e) {
    cell.skipped = true;
    cell.reason = e.what();
    return cell;
  }
  const double h1 = base.time_step * base.network.arcs[0].lambda / base.cfl;
  try {
    c.time_step = admissible_time_step(Network(c.network), base.cfl * h1 / lambda1, base.cfl);
  } catch (const GridError& e) {
    cell.skipped = true;
    cell.reason = e.what();
    return cell;
  }
  cell.time_step = c.time_step;

  Simulation sim(c);
  const RunResult r = sim.run();
  cell.termination = r.reason;
  cell.end_time = r.end_time;
  cell.peak = r.summary.peak;
  cell.mean_density = r.summary.mean_density;
  cell.regime = classify_regime(r.summary, opt.spike);
  return cell;
}

std::vector<SweepCell> sweep(const RunConfig& base, const std::vector<double>& lambda1,
                             const std::vector<double>& lambda2, const SweepOptions& opt) {
  std::vector<SweepCell> cells;
  cells.reserve(lambda1.size() * lambda2.size());
  for (double l1 : lambda1) {
    for (double l2 : lambda2) cells.push_back(sweep_cell(base, l1, l2, opt));
  }
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "lambda1,lambda2,regime,termination,end_time,peak,mean_density,time_step,note\n";
  os << std::setprecision(10);
  for (const auto& c : cells) {
    os << c.lambda1 << ',' << c.lambda2 << ',';
    if (c.skipped) {
      os << "skipped,,,,,,\"" << c.reason << "\"\n";
      continue;
    }
    os << to_string(c.regime) << ',' << to_string(c.termination) << ',' << c.end_time << ','
       << c.peak << ',' << c.mean_density << ',' << c.time_step << ",\n";
  }
}

namespace {

struct LevelRun {
  ArcArrays u, v, phi;
  std::vector<double> h;
};

LevelRun run_level(const RunConfig& base, double k) {
  RunConfig c = base;
  c.time_step = k;
  c.stop_when_steady = false;
  c.output.dir.clear();
  Simulation sim(c);
  const RunResult r = sim.run();
  if (r.reason == Termination::Blowup) {
    throw ConfigError("converge: run blew up at t = " + std::to_string(r.end_time));
  }
  LevelRun out{sim.state().u, sim.state().v, sim.phi().phi, {}};
  for (const auto& g : sim.grid().arcs) out.h.push_back(g.h);
  return out;
}

ConvergenceOrder order_of(const std::vector<double>& coarse, const std::vector<double>& fine) {
  return network_order(coarse, fine);
}

}  // namespace

std::vector<ConvergenceLevel> converge(const RunConfig& base, int levels) {
  if (levels < 1) throw ConfigError("converge: at least one level is required");
  // Fail on divisibility before any run starts.
  const Network net(base.network);
  for (int l = 0; l <= levels; ++l) {
    build_grid(net, base.time_step / std::ldexp(1.0, l), base.cfl);
  }

  std::vector<LevelRun> runs;
  for (int l = 0; l <= levels; ++l) runs.push_back(run_level(base, base.time_step / std::ldexp(1.0, l)));

  std::vector<ConvergenceLevel> table;
  for (int l = 0; l < levels; ++l) {
    const LevelRun& a = runs[static_cast<std::size_t>(l)];
    const LevelRun& b = runs[static_cast<std::size_t>(l) + 1];
    ConvergenceLevel row;
    row.h = a.h.front();
    for (std::size_t i = 0; i < a.u.size(); ++i) {
      row.error_u.push_back(l1_self_convergence_error(a.u[i], b.u[i], a.h[i]));
      row.error_phi.push_back(l1_self_convergence_error(a.phi[i], b.phi[i], a.h[i]));
      row.error_v.push_back(l1_self_convergence_error(a.v[i], b.v[i], a.h[i]));
      row.total_u += row.error_u.back();
      row.total_phi += row.error_phi.back();
      row.total_v += row.error_v.back();
    }
    if (!table.empty()) {
      const ConvergenceLevel& prev = table.back();
      row.order_u = order_of(prev.error_u, row.error_u);
      row.order_phi = order_of(prev.error_phi, row.error_phi);
      row.order_v = order_of(prev.error_v, row.error_v);
    }
    table.push_back(std::move(row));
  }
  return table;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceLevel>& table) {
  os << "h,error_u,order_u,error_phi,order_phi,error_v,order_v\n";
  os << std::setprecision(8);
  const auto order = [&os](const std::optional<ConvergenceOrder>& o) {
    if (!o) return;
    if (o->exact) {
      os << "exact";
    } else {
      os << o->value;
    }
  };
  for (const auto& r : table) {
    os << r.h << ',' << r.total_u << ',';
    order(r.order_u);
    os << ',' << r.total_phi << ',';
    order(r.order_phi);
    os << ',' << r.total_v << ',';
    order(r.order_v);
    os << '\n';
  }
}

}  // namespace chemonet
