#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemonet/network.hpp"

namespace chemonet {

enum class ModelKind {
  Full,        ///< f = phi_x u with phi from the parabolic equation
  Simplified,  ///< f = alpha_i u, phi not evolved
  Linear,      ///< f = 0
};

struct Model {
  ModelKind kind = ModelKind::Full;
  std::vector<double> alpha;  ///< per arc (index order), Simplified only
};

enum class InitialKind { Constant, CosinePerturbation, GaussianBump };
enum class PhiRule { EqualToU, Constant };

/// Initial density on one arc; v starts at zero.
///   Constant:           u = C0
///   CosinePerturbation: u = C0 (1 + A cos(2 pi m x / L))
///   GaussianBump:       u = C0 (1 + A exp(-(x - center)^2 / (2 width^2)))
struct InitialCondition {
  ArcId arc = 0;
  InitialKind kind = InitialKind::Constant;
  double c0 = 0.0;
  double amplitude = 0.0;
  double periods = 1.0;
  double center = 0.0;
  double width = 1.0;
  PhiRule phi = PhiRule::EqualToU;
  double phi_level = 0.0;

  double density(double x, double length) const;
  /// Exact integral of density over [0, length].
  double mass(double length) const;
};

struct OutputSpec {
  std::filesystem::path dir;    ///< empty: nothing is written
  double snapshot_every = 0.0;  ///< simulated time between snapshots; 0 = first and last only
  double diagnostics_every = 0.0;  ///< 0 = same as snapshots, or 1/200 of the run
};

struct RunConfig {
  std::string name;
  NetworkSpec network;
  double time_step = 0.0;
  double cfl = 0.5;
  double final_time = 1.0;
  Model model;
  std::vector<InitialCondition> initial;  ///< arcs without an entry start at zero
  OutputSpec output;
  double blowup_factor = 1e6;
  double steady_tolerance = 1e-8;
  bool stop_when_steady = true;

  double initial_mass() const;
};

/// Parses the JSON document; throws ConfigError with the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string to_json(const RunConfig& config, int indent = 2);

/// Everything that would prevent a run, without throwing.
std::vector<std::string> validate_config(const RunConfig& config);

std::string to_string(ModelKind k);

}  // namespace chemonet
