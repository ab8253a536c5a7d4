#include "chemonet/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chemonet/errors.hpp"
#include "chemonet/grid.hpp"

namespace chemonet {

using nlohmann::json;

double InitialCondition::density(double x, double length) const {
  switch (kind) {
    case InitialKind::Constant:
      return c0;
    case InitialKind::CosinePerturbation:
      return c0 * (1.0 + amplitude * std::cos(2.0 * std::numbers::pi * periods * x / length));
    case InitialKind::GaussianBump: {
      const double z = (x - center) / width;
      return c0 * (1.0 + amplitude * std::exp(-0.5 * z * z));
    }
  }
  return 0.0;
}

double InitialCondition::mass(double length) const {
  switch (kind) {
    case InitialKind::Constant:
      return c0 * length;
    case InitialKind::CosinePerturbation: {
      const double w = 2.0 * std::numbers::pi * periods / length;
      return c0 * (length + amplitude * std::sin(w * length) / w);
    }
    case InitialKind::GaussianBump: {
      const double s = width * std::numbers::sqrt2;
      const double bump = 0.5 * std::sqrt(std::numbers::pi) * s *
                          (std::erf((length - center) / s) + std::erf(center / s));
      return c0 * (length + amplitude * bump);
    }
  }
  return 0.0;
}

double RunConfig::initial_mass() const {
  double m = 0.0;
  for (const auto& ic : initial) {
    for (const auto& a : network.arcs) {
      if (a.id == ic.arc) m += ic.mass(a.length);
    }
  }
  return m;
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Full:
      return "full";
    case ModelKind::Simplified:
      return "simplified";
    case ModelKind::Linear:
      return "linear";
  }
  return "unknown";
}

namespace {

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Eigen::MatrixXd matrix(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    throw ConfigError(where + ": expected " + std::to_string(n) + " rows");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw ConfigError(where + ": row " + std::to_string(r) + " must have " + std::to_string(n) +
                        " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!j[r][c].is_number()) throw ConfigError(where + ": non-numeric entry");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

ModelKind model_kind(const std::string& s) {
  if (s == "full") return ModelKind::Full;
  if (s == "simplified") return ModelKind::Simplified;
  if (s == "linear") return ModelKind::Linear;
  throw ConfigError("model.kind: unknown value '" + s + "'");
}

InitialKind initial_kind(const std::string& s) {
  if (s == "constant") return InitialKind::Constant;
  if (s == "cosine_perturbation") return InitialKind::CosinePerturbation;
  if (s == "gaussian_bump") return InitialKind::GaussianBump;
  throw ConfigError("initial.kind: unknown value '" + s + "'");
}

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::Constant:
      return "constant";
    case InitialKind::CosinePerturbation:
      return "cosine_perturbation";
    case InitialKind::GaussianBump:
      return "gaussian_bump";
  }
  return "constant";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c;
  c.name = get_or<std::string>(doc, "name", "", "config");
  for (const auto& a : get<json>(doc, "arcs", "config")) {
    ArcSpec s;
    s.id = get<int>(a, "id", "arcs[]");
    const std::string where = "arcs[id=" + std::to_string(s.id) + "]";
    s.length = get<double>(a, "length", where);
    s.lambda = get<double>(a, "lambda", where);
    s.diffusion = get_or<double>(a, "D", 1.0, where);
    s.production = get_or<double>(a, "a", 0.0, where);
    s.degradation = get_or<double>(a, "b", 0.0, where);
    c.network.arcs.push_back(s);
  }
  if (doc.contains("nodes")) {
    for (const auto& n : doc["nodes"]) {
      NodeSpec s;
      s.id = get<int>(n, "id", "nodes[]");
      const std::string where = "nodes[id=" + std::to_string(s.id) + "]";
      s.incoming = get_or<std::vector<int>>(n, "incoming", {}, where);
      s.outgoing = get_or<std::vector<int>>(n, "outgoing", {}, where);
      s.xi = matrix(get<json>(n, "xi", where), s.degree(), where + ".xi");
      s.kappa = n.contains("kappa") ? matrix(n["kappa"], s.degree(), where + ".kappa")
                                    : Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.degree()),
                                                            static_cast<Eigen::Index>(s.degree()));
      c.network.nodes.push_back(std::move(s));
    }
  }
  c.network.outer_incoming = get_or<std::vector<int>>(doc, "outer_incoming", {}, "config");
  c.network.outer_outgoing = get_or<std::vector<int>>(doc, "outer_outgoing", {}, "config");

  c.time_step = get<double>(doc, "time_step", "config");
  c.cfl = get_or<double>(doc, "cfl", 0.5, "config");
  c.final_time = get<double>(doc, "final_time", "config");

  if (doc.contains("model")) {
    const json& m = doc["model"];
    c.model.kind = model_kind(get_or<std::string>(m, "kind", "full", "model"));
    c.model.alpha = get_or<std::vector<double>>(m, "alpha", {}, "model");
  }

  if (doc.contains("initial")) {
    for (const auto& i : doc["initial"]) {
      InitialCondition ic;
      ic.arc = get<int>(i, "arc", "initial[]");
      const std::string where = "initial[arc=" + std::to_string(ic.arc) + "]";
      ic.kind = initial_kind(get_or<std::string>(i, "kind", "constant", where));
      ic.c0 = get<double>(i, "C0", where);
      ic.amplitude = get_or<double>(i, "amplitude", 0.0, where);
      ic.periods = get_or<double>(i, "periods", 1.0, where);
      ic.center = get_or<double>(i, "center", 0.0, where);
      ic.width = get_or<double>(i, "width", 1.0, where);
      const auto phi = get_or<std::string>(i, "phi", "equal_to_u", where);
      if (phi == "equal_to_u") {
        ic.phi = PhiRule::EqualToU;
      } else if (phi == "constant") {
        ic.phi = PhiRule::Constant;
        ic.phi_level = get<double>(i, "phi_level", where);
      } else {
        throw ConfigError(where + ".phi: unknown rule '" + phi + "'");
      }
      c.initial.push_back(ic);
    }
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    c.output.dir = get_or<std::string>(o, "dir", "", "output");
    c.output.snapshot_every = get_or<double>(o, "snapshot_every", 0.0, "output");
    c.output.diagnostics_every = get_or<double>(o, "diagnostics_every", 0.0, "output");
  }
  c.blowup_factor = get_or<double>(doc, "blowup_threshold", 1e6, "config");
  c.steady_tolerance = get_or<double>(doc, "steady_tolerance", 1e-8, "config");
  c.stop_when_steady = get_or<bool>(doc, "stop_when_steady", true, "config");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const RunConfig& c, int indent) {
  json doc;
  if (!c.name.empty()) doc["name"] = c.name;
  doc["arcs"] = json::array();
  for (const auto& a : c.network.arcs) {
    doc["arcs"].push_back({{"id", a.id},
                           {"length", a.length},
                           {"lambda", a.lambda},
                           {"D", a.diffusion},
                           {"a", a.production},
                           {"b", a.degradation}});
  }
  doc["nodes"] = json::array();
  for (const auto& n : c.network.nodes) {
    doc["nodes"].push_back({{"id", n.id},
                            {"incoming", n.incoming},
                            {"outgoing", n.outgoing},
                            {"xi", matrix_json(n.xi)},
                            {"kappa", matrix_json(n.kappa)}});
  }
  doc["outer_incoming"] = c.network.outer_incoming;
  doc["outer_outgoing"] = c.network.outer_outgoing;
  doc["time_step"] = c.time_step;
  doc["cfl"] = c.cfl;
  doc["final_time"] = c.final_time;
  doc["model"] = {{"kind", to_string(c.model.kind)}};
  if (!c.model.alpha.empty()) doc["model"]["alpha"] = c.model.alpha;
  doc["initial"] = json::array();
  for (const auto& ic : c.initial) {
    json j = {{"arc", ic.arc}, {"kind", initial_kind_name(ic.kind)}, {"C0", ic.c0}};
    if (ic.kind != InitialKind::Constant) j["amplitude"] = ic.amplitude;
    if (ic.kind == InitialKind::CosinePerturbation) j["periods"] = ic.periods;
    if (ic.kind == InitialKind::GaussianBump) {
      j["center"] = ic.center;
      j["width"] = ic.width;
    }
    if (ic.phi == PhiRule::Constant) {
      j["phi"] = "constant";
      j["phi_level"] = ic.phi_level;
    } else {
      j["phi"] = "equal_to_u";
    }
    doc["initial"].push_back(j);
  }
  doc["output"] = {{"dir", c.output.dir.string()},
                   {"snapshot_every", c.output.snapshot_every},
                   {"diagnostics_every", c.output.diagnostics_every}};
  doc["blowup_threshold"] = c.blowup_factor;
  doc["steady_tolerance"] = c.steady_tolerance;
  doc["stop_when_steady"] = c.stop_when_steady;
  return doc.dump(indent);
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> out = validation_messages(c.network);
  if (!(c.time_step > 0.0)) out.push_back("time_step must be positive");
  if (!(c.cfl > 0.0 && c.cfl <= 0.5)) out.push_back("cfl must lie in (0, 1/2]");
  if (!(c.final_time > 0.0)) out.push_back("final_time must be positive");
  if (!(c.blowup_factor > 1.0)) out.push_back("blowup_threshold must exceed 1");
  if (!(c.steady_tolerance >= 0.0)) out.push_back("steady_tolerance must be nonnegative");
  if (c.model.kind == ModelKind::Simplified) {
    if (c.model.alpha.size() != c.network.arcs.size()) {
      out.push_back("simplified model needs one alpha per arc");
    } else {
      // alpha is listed in arc-id order
      std::vector<ArcSpec> sorted = c.network.arcs;
      std::sort(sorted.begin(), sorted.end(),
                [](const ArcSpec& x, const ArcSpec& y) { return x.id < y.id; });
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (std::abs(c.model.alpha[i]) >= sorted[i].lambda) {
          out.push_back("arc " + std::to_string(sorted[i].id) + ": |alpha| must be below lambda");
        }
      }
    }
  }
  std::set<ArcId> ids;
  for (const auto& a : c.network.arcs) ids.insert(a.id);
  std::set<ArcId> seen;
  for (const auto& ic : c.initial) {
    if (!ids.count(ic.arc)) out.push_back("initial: unknown arc " + std::to_string(ic.arc));
    if (!seen.insert(ic.arc).second) out.push_back("initial: arc " + std::to_string(ic.arc) + " listed twice");
    if (ic.c0 < 0.0) out.push_back("initial: C0 must be nonnegative on arc " + std::to_string(ic.arc));
    if (ic.kind != InitialKind::Constant && ic.amplitude < 0.0) {
      out.push_back("initial: amplitude must be nonnegative on arc " + std::to_string(ic.arc));
    }
    if (ic.kind == InitialKind::CosinePerturbation && ic.amplitude >= 1.0) {
      out.push_back("initial: cosine amplitude must be below 1 on arc " + std::to_string(ic.arc));
    }
    if (ic.kind == InitialKind::GaussianBump && !(ic.width > 0.0)) {
      out.push_back("initial: bump width must be positive on arc " + std::to_string(ic.arc));
    }
  }
  if (out.empty()) {
    try {
      build_grid(Network(c.network), c.time_step, c.cfl);
    } catch (const std::exception& e) {
      out.push_back(e.what());
    }
  }
  return out;
}

}  // namespace chemonet
