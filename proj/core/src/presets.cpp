#include "chemonet/presets.hpp"

#include <cmath>
#include <map>

#include "chemonet/errors.hpp"
#include "chemonet/grid.hpp"

namespace chemonet {

namespace {

// Relative amplitudes of the cosine perturbation in the initial density.
constexpr double kTwoArcAmplitude = 0.0035;
constexpr double kSingleArcAmplitude = 0.065;
constexpr double kDefaultAmplitude = 0.1;
constexpr double kPermeability = 1.0;

ArcSpec arc(int id, double length, double lambda, double d = 1.0, double a = 1.0, double b = 1.0) {
  return ArcSpec{id, length, lambda, d, a, b};
}

NodeSpec node(int id, std::vector<int> in, std::vector<int> out, Eigen::MatrixXd xi) {
  NodeSpec n;
  n.id = id;
  n.incoming = std::move(in);
  n.outgoing = std::move(out);
  n.kappa = Eigen::MatrixXd::Constant(xi.rows(), xi.cols(), kPermeability);
  n.kappa.diagonal().setZero();
  n.xi = std::move(xi);
  return n;
}

// Arc 1 runs from an outer end into the node, arc 2 from the node to an outer end.
NetworkSpec two_arcs(ArcSpec a1, ArcSpec a2, const Eigen::Matrix2d& xi) {
  NetworkSpec net;
  net.arcs = {a1, a2};
  net.nodes = {node(1, {a1.id}, {a2.id}, xi)};
  net.outer_incoming = {a1.id};
  net.outer_outgoing = {a2.id};
  return net;
}

Eigen::Matrix2d xi2(double x11, double x12, double x21, double x22) {
  Eigen::Matrix2d m;
  m << x11, x12, x21, x22;
  return m;
}

InitialCondition cosine(int arc, double c0, double amplitude = kDefaultAmplitude) {
  InitialCondition ic;
  ic.arc = arc;
  ic.kind = InitialKind::CosinePerturbation;
  ic.c0 = c0;
  ic.amplitude = amplitude;
  ic.periods = 1.0;
  return ic;
}

InitialCondition constant(int arc, double c0) {
  InitialCondition ic;
  ic.arc = arc;
  ic.c0 = c0;
  return ic;
}

RunConfig two_arc_simplified() {
  RunConfig c;
  c.name = "two_arc_simplified";
  c.network = two_arcs(arc(1, 4.0, 2.0, 1.0, 0.0, 0.0), arc(2, 1.0, 1.0, 1.0, 0.0, 0.0),
                       xi2(0.8, 0.2, 0.4, 0.6));
  c.model.kind = ModelKind::Simplified;
  c.model.alpha = {0.5, 0.5};
  c.time_step = 0.005;  // h1 = 0.02, h2 = 0.01
  c.final_time = 100.0;
  c.initial = {cosine(1, 50.0), cosine(2, 50.0)};
  c.stop_when_steady = false;
  return c;
}

RunConfig two_arc_full(const std::string& name, const Eigen::Matrix2d& xi, double final_time) {
  RunConfig c;
  c.name = name;
  c.network = two_arcs(arc(1, 6.0, 5.0), arc(2, 2.0, 4.0), xi);
  c.time_step = 0.005;  // h1 = 0.05, h2 = 0.04
  c.final_time = final_time;
  c.initial = {cosine(1, 20.0, kTwoArcAmplitude), cosine(2, 20.0, kTwoArcAmplitude)};
  return c;
}

RunConfig twelve_arc() {
  RunConfig c;
  c.name = "twelve_arc";
  NetworkSpec& net = c.network;
  for (int id = 1; id <= 12; ++id) net.arcs.push_back(arc(id, 1.0, 10.0));
  // Ring 1: NW -> NE, 2: NE -> SE, 3: SE -> SW, 4: SW -> NW. Odd outer arcs
  // enter a node, even ones leave it.
  struct Layout {
    int id;
    std::vector<int> in, out;
  };
  const Layout layout[] = {
      {1, {3, 11}, {4, 12}},  // S-W
      {2, {2, 9}, {3, 10}},   // S-E
      {3, {1, 7}, {2, 8}},    // N-E
      {4, {4, 5}, {1, 6}},    // N-W
  };
  const auto& table = twelve_arc_table();
  for (std::size_t p = 0; p < 4; ++p) {
    const Layout& l = layout[p];
    std::map<int, Eigen::Index> local;
    Eigen::Index n = 0;
    for (int a : l.in) local[a] = n++;
    for (int a : l.out) local[a] = n++;
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : table) {
      if (e.node == static_cast<int>(p)) xi(local.at(e.from), local.at(e.to)) = e.value;
    }
    net.nodes.push_back(node(l.id, l.in, l.out, xi));
  }
  net.outer_incoming = {5, 7, 9, 11};
  net.outer_outgoing = {6, 8, 10, 12};
  c.time_step = 0.0005;  // h = 0.01
  c.final_time = 30.0;
  for (int id = 1; id <= 12; ++id) {
    c.initial.push_back(id == 5 ? cosine(id, 110.0) : constant(id, 110.0));
  }
  return c;
}

RunConfig blowup_single_arc() {
  RunConfig c;
  c.name = "blowup_single_arc";
  c.network.arcs = {arc(1, 1.0, 10.0)};
  c.network.outer_incoming = {1};
  c.network.outer_outgoing = {1};
  c.time_step = 0.00005;  // h = 0.001
  c.final_time = 0.5;
  c.initial = {cosine(1, 9000.0, kSingleArcAmplitude)};
  return c;
}

RunConfig regime_sweep() {
  RunConfig c = two_arc_family(5.0, 4.0, 0.02);
  c.name = "regime_sweep";
  return c;
}

}  // namespace

const std::vector<TableEntry>& twelve_arc_table() {
  static const std::vector<TableEntry> table = {
      // S-W
      {0, 12, 12, 0.1}, {0, 11, 12, 0.3}, {0, 3, 12, 0.3}, {0, 4, 12, 0.3},
      {0, 12, 11, 0.2}, {0, 11, 11, 0.2}, {0, 3, 11, 0.3}, {0, 4, 11, 0.3},
      {0, 12, 3, 0.2},  {0, 11, 3, 0.2},  {0, 3, 3, 0.4},  {0, 4, 3, 0.2},
      {0, 12, 4, 0.5},  {0, 11, 4, 0.1},  {0, 3, 4, 0.2},  {0, 4, 4, 0.2},
      // S-E
      {1, 3, 3, 0.1},   {1, 10, 3, 0.3},  {1, 9, 3, 0.3},  {1, 2, 3, 0.3},
      {1, 3, 10, 0.2},  {1, 10, 10, 0.2}, {1, 9, 10, 0.3}, {1, 2, 10, 0.3},
      {1, 3, 9, 0.2},   {1, 10, 9, 0.2},  {1, 9, 9, 0.4},  {1, 2, 9, 0.2},
      {1, 3, 2, 0.5},   {1, 10, 2, 0.1},  {1, 9, 2, 0.2},  {1, 2, 2, 0.2},
      // N-E
      {2, 1, 1, 0.1},   {2, 2, 1, 0.3},   {2, 8, 1, 0.3},  {2, 7, 1, 0.3},
      {2, 1, 2, 0.2},   {2, 2, 2, 0.2},   {2, 8, 2, 0.3},  {2, 7, 2, 0.3},
      {2, 1, 8, 0.2},   {2, 2, 8, 0.2},   {2, 8, 8, 0.4},  {2, 7, 8, 0.2},
      {2, 1, 7, 0.5},   {2, 2, 7, 0.1},   {2, 8, 7, 0.2},  {2, 7, 7, 0.2},
      // N-W
      {3, 5, 5, 0.1},   {3, 4, 5, 0.3},   {3, 1, 5, 0.3},  {3, 6, 5, 0.3},
      {3, 5, 4, 0.2},   {3, 4, 4, 0.2},   {3, 1, 4, 0.3},  {3, 6, 4, 0.3},
      {3, 5, 1, 0.2},   {3, 4, 1, 0.2},   {3, 1, 1, 0.4},  {3, 6, 1, 0.2},
      {3, 5, 6, 0.5},   {3, 4, 6, 0.1},   {3, 1, 6, 0.2},  {3, 6, 6, 0.2},
  };
  return table;
}

RunConfig two_arc_family(double lambda1, double lambda2, double h1, double cfl, double xi11) {
  RunConfig c;
  c.name = "blowup_two_arc";
  c.network = two_arcs(arc(1, 6.0, lambda1), arc(2, 2.0, lambda2),
                       two_arc_dissipative_family(lambda1, lambda2, xi11));
  c.cfl = cfl;
  c.time_step = cfl * h1 / lambda1;
  c.final_time = 10.0;
  c.initial = {cosine(1, 20.0, kTwoArcAmplitude), cosine(2, 20.0, kTwoArcAmplitude)};
  return c;
}

RunConfig convergence_table2(double h) {
  RunConfig c;
  c.name = "convergence_table2";
  c.network = two_arcs(arc(1, 1.0, 4.0), arc(2, 1.0, 4.0), xi2(0.8, 0.25, 0.2, 0.75));
  c.time_step = h / 8.0;
  c.final_time = 25.0;
  c.initial = {cosine(1, 60.028), cosine(2, 60.028)};
  c.stop_when_steady = false;
  return c;
}

SweepRange regime_sweep_range() {
  return {{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, {0.5, 1.0, 2.0, 3.0, 4.0, 5.0}};
}

std::vector<std::string> preset_names() {
  return {"two_arc_simplified", "two_arc_full_dissipative", "two_arc_full_nondissipative",
          "twelve_arc",         "blowup_single_arc",        "blowup_two_arc",
          "convergence_table2", "regime_sweep"};
}

RunConfig preset(const std::string& name) {
  if (name == "two_arc_simplified") return two_arc_simplified();
  if (name == "two_arc_full_dissipative") {
    return two_arc_full(name, xi2(0.8, 0.2, 0.25, 0.75), 10.0);
  }
  if (name == "two_arc_full_nondissipative") {
    return two_arc_full(name, xi2(0.8, 0.24, 0.25, 0.7), 30.0);
  }
  if (name == "twelve_arc") return twelve_arc();
  if (name == "blowup_single_arc") return blowup_single_arc();
  if (name == "blowup_two_arc") return two_arc_family(1.0, 2.0, 0.01);
  if (name == "convergence_table2") return convergence_table2(0.025);
  if (name == "regime_sweep") return regime_sweep();
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace chemonet
