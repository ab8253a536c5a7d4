#pragma once

#include <chemonet/network.hpp>

namespace testnet {

inline Eigen::Matrix2d xi2(double a, double b, double c, double d) {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

// Arc 1 enters the node from an outer end, arc 2 leaves it to an outer end.
inline chemonet::NetworkSpec two_arcs(chemonet::ArcSpec a1, chemonet::ArcSpec a2,
                                      const Eigen::Matrix2d& xi, double kappa = 0.0) {
  chemonet::NetworkSpec net;
  net.arcs = {a1, a2};
  chemonet::NodeSpec n;
  n.id = 1;
  n.incoming = {a1.id};
  n.outgoing = {a2.id};
  n.xi = xi;
  n.kappa = Eigen::MatrixXd::Constant(2, 2, kappa);
  n.kappa.diagonal().setZero();
  net.nodes = {n};
  net.outer_incoming = {a1.id};
  net.outer_outgoing = {a2.id};
  return net;
}

inline chemonet::NetworkSpec single_arc(double length, double lambda) {
  chemonet::NetworkSpec net;
  net.arcs = {chemonet::ArcSpec{1, length, lambda, 1.0, 1.0, 1.0}};
  net.outer_incoming = {1};
  net.outer_outgoing = {1};
  return net;
}

}  // namespace testnet
