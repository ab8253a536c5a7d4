#include <doctest.h>

#include <chemonet/errors.hpp>
#include <chemonet/network.hpp>

#include "helpers.hpp"

using namespace chemonet;
using testnet::xi2;

namespace {

NodeSpec node2(const Eigen::Matrix2d& xi) {
  NodeSpec n;
  n.id = 1;
  n.incoming = {1};
  n.outgoing = {2};
  n.xi = xi;
  n.kappa = Eigen::MatrixXd::Zero(2, 2);
  return n;
}

const std::vector<ArcSpec> kArcs21 = {ArcSpec{1, 4.0, 2.0}, ArcSpec{2, 1.0, 1.0}};

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("flux conservation") {
    CHECK(validate_flux_conservation(node2(xi2(0.8, 0.2, 0.4, 0.6)), kArcs21).ok());

    const FluxReport bad = validate_flux_conservation(node2(xi2(0.9, 0.2, 0.4, 0.6)), kArcs21);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].column == 0);
    CHECK(bad.violations[0].arc == 1);
    CHECK(bad.violations[0].residual == doctest::Approx(0.2).epsilon(1e-12));

    NodeSpec lone;
    lone.incoming = {1};
    lone.xi = Eigen::MatrixXd::Identity(1, 1);
    lone.kappa = Eigen::MatrixXd::Zero(1, 1);
    CHECK(validate_flux_conservation(lone, kArcs21).ok());

    NodeSpec unknown = node2(xi2(0.8, 0.2, 0.4, 0.6));
    unknown.outgoing = {7};
    CHECK_THROWS_AS(validate_flux_conservation(unknown, kArcs21), StructuralError);
  }

  TEST_CASE("dissipativity") {
    CHECK(validate_dissipative(node2(xi2(0.8, 0.2, 0.4, 0.6))).dissipative);
    const auto r = validate_dissipative(node2(xi2(0.8, 0.24, 0.25, 0.7)));
    CHECK_FALSE(r.dissipative);
    REQUIRE(r.row_sums.size() == 2);
    CHECK(r.row_sums[0] == doctest::Approx(1.04));
    CHECK(r.row_sums[1] == doctest::Approx(0.95));
    CHECK(validate_dissipative(node2(Eigen::Matrix2d::Identity())).dissipative);
  }

  TEST_CASE("two-arc dissipative family") {
    const Eigen::Matrix2d a = two_arc_dissipative_family(1.0, 2.0, 0.96);
    CHECK(a(0, 0) == doctest::Approx(0.96));
    CHECK(a(0, 1) == doctest::Approx(0.04));
    CHECK(a(1, 0) == doctest::Approx(0.02));
    CHECK(a(1, 1) == doctest::Approx(0.98));

    CHECK(two_arc_dissipative_family(3.0, 3.0, 1.0).isApprox(Eigen::Matrix2d::Identity()));

    const Eigen::Matrix2d b = two_arc_dissipative_family(2.0, 1.0, 0.8);
    CHECK(b.isApprox(xi2(0.8, 0.2, 0.4, 0.6), 1e-14));

    CHECK_THROWS_AS(two_arc_dissipative_family(2.0, 1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(two_arc_dissipative_family(1.0, 2.0, 1.2), std::domain_error);
  }

  TEST_CASE("node kernel") {
    const NodeSpec n = node2(xi2(0.8, 0.2, 0.4, 0.6));
    const Eigen::MatrixXd m = node_kernel_matrix(n, kArcs21);
    // lambda_j (xi_ij - delta_ij)
    CHECK(m(0, 0) == doctest::Approx(-0.4));
    CHECK(m(0, 1) == doctest::Approx(0.2));
    CHECK(m(1, 0) == doctest::Approx(0.8));
    CHECK(m(1, 1) == doctest::Approx(-0.4));
    CHECK(kernel_dimension(n, kArcs21) == 1);
    const Eigen::VectorXd v = kernel_vector(n, kArcs21);
    CHECK(v(1) == doctest::Approx(1.0));
    CHECK(v(0) == doctest::Approx(0.5));

    CHECK(kernel_dimension(node2(Eigen::Matrix2d::Identity()), kArcs21) == 2);
    const std::vector<ArcSpec> equal = {ArcSpec{1, 1.0, 3.0}, ArcSpec{2, 1.0, 3.0}};
    CHECK(kernel_dimension(node2(xi2(0.3, 0.7, 0.7, 0.3)), equal) == 1);
  }

  TEST_CASE("network construction") {
    const Network net(testnet::two_arcs(ArcSpec{2, 1.0, 1.0}, ArcSpec{5, 4.0, 2.0},
                                        two_arc_dissipative_family(1.0, 2.0, 0.9)));
    // Arcs are stored by id.
    CHECK(net.arc(0).id == 2);
    CHECK(net.index_of(5) == 1);
    CHECK(net.attachment(0, End::Left).outer);
    CHECK_FALSE(net.attachment(0, End::Right).outer);
    CHECK(net.attachment(1, End::Left).local == 1);
    CHECK(net.attachment(1, End::Right).outer);
    CHECK(net.dissipative());

    NetworkSpec flux = testnet::two_arcs(ArcSpec{1, 4.0, 2.0}, ArcSpec{2, 1.0, 1.0},
                                         xi2(0.9, 0.2, 0.4, 0.6));
    CHECK_THROWS_AS(Network{flux}, ValidationError);
    CHECK_FALSE(validation_messages(flux).empty());

    NetworkSpec dangling = testnet::two_arcs(ArcSpec{1, 4.0, 2.0}, ArcSpec{2, 1.0, 1.0},
                                             xi2(0.8, 0.2, 0.4, 0.6));
    dangling.outer_outgoing.clear();
    CHECK_THROWS_AS(Network{dangling}, StructuralError);

    NetworkSpec asym = testnet::two_arcs(ArcSpec{1, 4.0, 2.0}, ArcSpec{2, 1.0, 1.0},
                                         xi2(0.8, 0.2, 0.4, 0.6));
    asym.nodes[0].kappa(0, 1) = 1.0;
    CHECK_THROWS_AS(Network{asym}, ValidationError);

    CHECK(validation_messages(testnet::single_arc(1.0, 1.0)).empty());
  }
}
