#include <doctest.h>

#include <cmath>
#include <numbers>

#include <chemonet/errors.hpp>
#include <chemonet/network.hpp>
#include <chemonet/presets.hpp>

using namespace chemonet;

namespace {

const char* kTwoArc = R"({
  "name": "pair",
  "arcs": [
    {"id": 1, "length": 4, "lambda": 2, "D": 1, "a": 0, "b": 0},
    {"id": 2, "length": 1, "lambda": 1, "D": 1, "a": 0, "b": 0}
  ],
  "nodes": [
    {"id": 1, "incoming": [1], "outgoing": [2],
     "xi": [[0.8, 0.2], [0.4, 0.6]], "kappa": [[0, 1], [1, 0]]}
  ],
  "outer_incoming": [1],
  "outer_outgoing": [2],
  "time_step": 0.005,
  "final_time": 2.0,
  "model": {"kind": "simplified", "alpha": [0.5, 0.5]},
  "initial": [
    {"arc": 1, "kind": "cosine_perturbation", "C0": 50, "amplitude": 0.1},
    {"arc": 2, "kind": "gaussian_bump", "C0": 50, "amplitude": 0.5, "center": 0.5,
     "width": 0.1, "phi": "constant", "phi_level": 3}
  ]
})";

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parse and round trip") {
    const RunConfig c = parse_config(kTwoArc);
    CHECK(c.name == "pair");
    CHECK(c.network.arcs.size() == 2);
    CHECK(c.network.nodes[0].xi(1, 0) == 0.4);
    CHECK(c.model.kind == ModelKind::Simplified);
    CHECK(c.cfl == 0.5);
    CHECK(c.blowup_factor == 1e6);
    CHECK(c.steady_tolerance == 1e-8);
    CHECK(c.initial[1].kind == InitialKind::GaussianBump);
    CHECK(c.initial[1].phi == PhiRule::Constant);
    CHECK(c.initial[1].phi_level == 3.0);
    CHECK(validate_config(c).empty());

    const RunConfig back = parse_config(to_json(c));
    CHECK(to_json(back) == to_json(c));
  }

  TEST_CASE("initial densities") {
    InitialCondition ic;
    ic.kind = InitialKind::CosinePerturbation;
    ic.c0 = 20.0;
    ic.amplitude = 0.1;
    CHECK(ic.density(0.0, 2.0) == doctest::Approx(22.0));
    CHECK(ic.density(1.0, 2.0) == doctest::Approx(18.0));
    CHECK(ic.mass(2.0) == doctest::Approx(40.0));
    ic.kind = InitialKind::GaussianBump;
    ic.center = 1.0;
    ic.width = 0.1;
    CHECK(ic.density(1.0, 2.0) == doctest::Approx(22.0));
    CHECK(ic.mass(2.0) == doctest::Approx(40.0 + 2.0 * 0.1 * std::sqrt(2.0 * std::numbers::pi))
                               .epsilon(1e-9));
  }

  TEST_CASE("parse errors name the key") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    try {
      parse_config(R"({"arcs": [{"id": 1, "lambda": 1}]})");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("length") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/file.json"), ConfigError);
  }

  TEST_CASE("validation messages") {
    RunConfig c = parse_config(kTwoArc);
    c.model.alpha = {0.5};
    CHECK_FALSE(validate_config(c).empty());
    c = parse_config(kTwoArc);
    c.model.alpha = {2.5, 0.5};
    CHECK_FALSE(validate_config(c).empty());
    c = parse_config(kTwoArc);
    c.time_step = 0.0051;
    CHECK_FALSE(validate_config(c).empty());
    c = parse_config(kTwoArc);
    c.initial[0].arc = 9;
    CHECK_FALSE(validate_config(c).empty());
    c = parse_config(kTwoArc);
    c.cfl = 0.7;
    CHECK_FALSE(validate_config(c).empty());
    c = parse_config(kTwoArc);
    c.network.nodes[0].xi(0, 0) = 0.9;
    CHECK_FALSE(validate_config(c).empty());
  }

  TEST_CASE("presets") {
    for (const auto& name : preset_names()) {
      CAPTURE(name);
      const RunConfig c = preset(name);
      CHECK(validate_config(c).empty());
      CHECK(validation_messages(c.network).empty());
    }
    CHECK_THROWS_AS(preset("nope"), ConfigError);

    const RunConfig s = preset("two_arc_simplified");
    CHECK(s.network.arcs[0].length == 4.0);
    CHECK(s.network.arcs[1].lambda == 1.0);
    CHECK(s.initial_mass() == doctest::Approx(250.0));

    const RunConfig t = preset("twelve_arc");
    CHECK(t.network.arcs.size() == 12);
    CHECK(t.network.nodes.size() == 4);
    CHECK(t.time_step == 0.0005);
    CHECK(t.initial_mass() == doctest::Approx(1320.0));
    CHECK(twelve_arc_table().size() == 64);

    const RunConfig c2 = preset("convergence_table2");
    CHECK(c2.initial_mass() == doctest::Approx(120.056));
    CHECK(c2.final_time == 25.0);

    CHECK(preset("two_arc_full_dissipative").initial_mass() == doctest::Approx(160.0));
    CHECK(preset("blowup_single_arc").initial_mass() == doctest::Approx(9000.0));
    CHECK(preset("blowup_two_arc").network.nodes[0].xi(0, 0) == 0.96);
  }
}
