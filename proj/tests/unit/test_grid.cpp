#include <doctest.h>

#include <string>

#include <chemonet/errors.hpp>
#include <chemonet/grid.hpp>

#include "helpers.hpp"

using namespace chemonet;

TEST_SUITE("grid") {
  TEST_CASE("grid sizes") {
    const GridSpec g = build_grid(Network(testnet::single_arc(4.0, 2.0)), 0.005);
    CHECK(g.arcs[0].h == doctest::Approx(0.02));
    CHECK(g.arcs[0].interior == 199);
    CHECK(g.arcs[0].points() == 201);
    CHECK(g.arcs[0].x(200) == doctest::Approx(4.0));

    const GridSpec t = build_grid(Network(testnet::single_arc(1.0, 10.0)), 0.0005);
    CHECK(t.arcs[0].h == doctest::Approx(0.01));
    CHECK(t.arcs[0].interior == 99);

    const GridSpec q = build_grid(Network(testnet::single_arc(1.0, 4.0)), 0.003125, 0.125);
    CHECK(q.arcs[0].h == doctest::Approx(0.1));
    CHECK(q.cfl == 0.125);
  }

  TEST_CASE("incommensurate step") {
    const Network net(testnet::single_arc(1.0, 3.0));
    CHECK_THROWS_AS(build_grid(net, 0.1), GridError);
    const NearbySteps n = nearest_admissible_steps(net.arc(0), 0.1);
    CHECK(n.smaller_k == doctest::Approx(1.0 / 12.0));
    CHECK(n.larger_k == doctest::Approx(1.0 / 6.0));
    try {
      build_grid(net, 0.1);
    } catch (const GridError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("0.0833") != std::string::npos);
      CHECK(msg.find("0.1666") != std::string::npos);
    }
  }

  TEST_CASE("admissible step") {
    const Network net(testnet::two_arcs(ArcSpec{1, 6.0, 1.0}, ArcSpec{2, 2.0, 2.0},
                                        two_arc_dissipative_family(1.0, 2.0, 0.96)));
    const double k = admissible_time_step(net, 0.013);
    CHECK(k <= 0.013);
    const GridSpec g = build_grid(net, k);
    CHECK(g.arcs[0].interior >= 2);
    CHECK(g.total_points() == g.arcs[0].points() + g.arcs[1].points());
  }
}
