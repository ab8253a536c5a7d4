#include "chemonet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "chemonet/errors.hpp"

namespace chemonet {

namespace {

constexpr double kValidatorTol = 1e-12;
constexpr double kRankTol = 1e-10;

const ArcSpec& find_arc(std::span<const ArcSpec> arcs, ArcId id) {
  auto it = std::find_if(arcs.begin(), arcs.end(), [id](const ArcSpec& a) { return a.id == id; });
  if (it == arcs.end()) {
    throw StructuralError("unknown arc id " + std::to_string(id));
  }
  return *it;
}

void check_square(const NodeSpec& node, const Eigen::MatrixXd& m, const char* name) {
  const auto n = static_cast<Eigen::Index>(node.degree());
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << "node " << node.id << ": " << name << " is " << m.rows() << "x" << m.cols()
       << ", expected " << n << "x" << n;
    throw StructuralError(os.str());
  }
}

}  // namespace

std::vector<ArcId> NodeSpec::arcs() const {
  std::vector<ArcId> all(incoming);
  all.insert(all.end(), outgoing.begin(), outgoing.end());
  return all;
}

FluxReport validate_flux_conservation(const NodeSpec& node, std::span<const ArcSpec> arcs) {
  check_square(node, node.xi, "xi");
  const auto ids = node.arcs();
  std::vector<double> lambda;
  lambda.reserve(ids.size());
  for (ArcId id : ids) lambda.push_back(find_arc(arcs, id).lambda);

  FluxReport report;
  for (std::size_t j = 0; j < ids.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      sum += lambda[i] * node.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const double residual = sum - lambda[j];
    if (std::abs(residual) > kValidatorTol * lambda[j]) {
      report.violations.push_back({j, ids[j], residual});
    }
  }
  return report;
}

DissipativityReport validate_dissipative(const NodeSpec& node) {
  DissipativityReport report;
  report.dissipative = true;
  for (Eigen::Index i = 0; i < node.xi.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < node.xi.cols(); ++j) {
      const double x = node.xi(i, j);
      if (x < 0.0 || x > 1.0) report.dissipative = false;
      sum += x;
    }
    report.row_sums.push_back(sum);
    if (std::abs(sum - 1.0) > kValidatorTol) report.dissipative = false;
  }
  return report;
}

Eigen::Matrix2d two_arc_dissipative_family(double lambda1, double lambda2, double xi11) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::domain_error("two_arc_dissipative_family: speeds must be positive");
  }
  const double lower = std::max(0.0, (lambda1 - lambda2) / lambda1);
  if (!(xi11 >= lower && xi11 <= 1.0)) {
    std::ostringstream os;
    os << "xi11 = " << xi11 << " outside the admissible interval [" << lower << ", 1]";
    throw std::domain_error(os.str());
  }
  const double ratio = lambda1 / lambda2;
  Eigen::Matrix2d xi;
  xi(0, 0) = xi11;
  xi(0, 1) = 1.0 - xi11;
  xi(1, 0) = ratio * (1.0 - xi11);
  xi(1, 1) = 1.0 - ratio * (1.0 - xi11);
  return xi;
}

Eigen::MatrixXd node_kernel_matrix(const NodeSpec& node, std::span<const ArcSpec> arcs) {
  check_square(node, node.xi, "xi");
  const auto ids = node.arcs();
  const auto n = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lj = find_arc(arcs, ids[static_cast<std::size_t>(j)]).lambda;
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, j) = lj * (node.xi(i, j) - (i == j ? 1.0 : 0.0));
    }
  }
  return m;
}

int kernel_dimension(const NodeSpec& node, std::span<const ArcSpec> arcs) {
  const Eigen::MatrixXd m = node_kernel_matrix(node, arcs);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double scale = s.size() > 0 ? s(0) : 0.0;
  if (scale == 0.0) return static_cast<int>(m.cols());
  int nullity = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= kRankTol * scale) ++nullity;
  }
  return nullity;
}

Eigen::VectorXd kernel_vector(const NodeSpec& node, std::span<const ArcSpec> arcs) {
  const Eigen::MatrixXd m = node_kernel_matrix(node, arcs);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(m.cols() - 1);
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
  return v / v(arg);
}

// ---------------------------------------------------------------------------

namespace {

struct Resolution {
  std::vector<std::optional<Attachment>> left, right;
  std::vector<std::vector<std::size_t>> node_arcs;
};

std::size_t sorted_index(const std::vector<ArcSpec>& arcs, ArcId id) {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), id,
                             [](const ArcSpec& a, ArcId v) { return a.id < v; });
  if (it == arcs.end() || it->id != id) {
    throw StructuralError("unknown arc id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - arcs.begin());
}

void attach(std::optional<Attachment>& slot, Attachment what, ArcId id, const char* end) {
  if (slot) {
    throw StructuralError("arc " + std::to_string(id) + ": " + end +
                          " end is attached more than once");
  }
  slot = what;
}

// Arcs must already be sorted by id.
Resolution resolve(const NetworkSpec& spec) {
  Resolution r;
  const std::size_t n = spec.arcs.size();
  if (n == 0) throw StructuralError("network has no arcs");
  for (std::size_t i = 1; i < n; ++i) {
    if (spec.arcs[i].id == spec.arcs[i - 1].id) {
      throw StructuralError("duplicate arc id " + std::to_string(spec.arcs[i].id));
    }
  }
  r.left.resize(n);
  r.right.resize(n);
  for (ArcId id : spec.outer_incoming) {
    attach(r.left[sorted_index(spec.arcs, id)], Attachment{}, id, "left");
  }
  for (ArcId id : spec.outer_outgoing) {
    attach(r.right[sorted_index(spec.arcs, id)], Attachment{}, id, "right");
  }
  for (std::size_t p = 0; p < spec.nodes.size(); ++p) {
    const NodeSpec& node = spec.nodes[p];
    if (node.degree() == 0) {
      throw StructuralError("node " + std::to_string(node.id) + " has no arcs");
    }
    check_square(node, node.xi, "xi");
    check_square(node, node.kappa, "kappa");
    std::vector<std::size_t> local;
    const auto ids = node.arcs();
    for (std::size_t l = 0; l < ids.size(); ++l) {
      const std::size_t a = sorted_index(spec.arcs, ids[l]);
      if (std::find(local.begin(), local.end(), a) != local.end()) {
        throw StructuralError("node " + std::to_string(node.id) + " lists arc " +
                              std::to_string(ids[l]) + " twice");
      }
      local.push_back(a);
      Attachment at{false, p, l};
      if (node.is_incoming(l)) {
        attach(r.right[a], at, ids[l], "right");
      } else {
        attach(r.left[a], at, ids[l], "left");
      }
    }
    r.node_arcs.push_back(std::move(local));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.left[i]) {
      throw StructuralError("arc " + std::to_string(spec.arcs[i].id) + ": left end is unattached");
    }
    if (!r.right[i]) {
      throw StructuralError("arc " + std::to_string(spec.arcs[i].id) + ": right end is unattached");
    }
  }
  // Connectivity over arcs sharing a node.
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = true;
  while (!todo.empty()) {
    const std::size_t a = todo.front();
    todo.pop();
    for (const auto* slot : {&r.left[a], &r.right[a]}) {
      if ((*slot)->outer) continue;
      for (std::size_t b : r.node_arcs[(*slot)->node]) {
        if (!seen[b]) {
          seen[b] = true;
          todo.push(b);
        }
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw StructuralError("network is not connected");
  }
  return r;
}

void check_arc_physics(const ArcSpec& a, std::vector<std::string>& out) {
  const auto bad = [&](const char* what) {
    out.push_back("arc " + std::to_string(a.id) + ": " + what);
  };
  if (!(a.length > 0.0)) bad("length must be positive");
  if (!(a.lambda > 0.0)) bad("lambda must be positive");
  if (!(a.diffusion > 0.0)) bad("D must be positive");
  if (!(a.production >= 0.0)) bad("a must be nonnegative");
  if (!(a.degradation >= 0.0)) bad("b must be nonnegative");
}

void check_node_coefficients(const NodeSpec& node, std::span<const ArcSpec> arcs,
                             std::vector<std::string>& out) {
  const std::string tag = "node " + std::to_string(node.id) + ": ";
  for (Eigen::Index i = 0; i < node.xi.rows(); ++i) {
    for (Eigen::Index j = 0; j < node.xi.cols(); ++j) {
      const double x = node.xi(i, j);
      if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << tag << "xi(" << i << "," << j << ") = " << x << " outside [0,1]";
        out.push_back(os.str());
      }
      const double kij = node.kappa(i, j);
      if (!(kij >= 0.0)) {
        std::ostringstream os;
        os << tag << "kappa(" << i << "," << j << ") = " << kij << " is negative";
        out.push_back(os.str());
      }
      if (kij != node.kappa(j, i)) {
        std::ostringstream os;
        os << tag << "kappa is not symmetric at (" << i << "," << j << ")";
        out.push_back(os.str());
      }
    }
    if (node.kappa(i, i) != 0.0) {
      out.push_back(tag + "kappa diagonal must be zero");
    }
  }
  const FluxReport flux = validate_flux_conservation(node, arcs);
  for (const auto& v : flux.violations) {
    std::ostringstream os;
    os << tag << "flux conservation fails for arc " << v.arc << " (residual " << v.residual
       << ")";
    out.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> validation_messages(const NetworkSpec& input) {
  NetworkSpec spec = input;
  std::sort(spec.arcs.begin(), spec.arcs.end(),
            [](const ArcSpec& a, const ArcSpec& b) { return a.id < b.id; });
  std::vector<std::string> out;
  try {
    resolve(spec);
  } catch (const StructuralError& e) {
    out.emplace_back(e.what());
    return out;
  }
  for (const auto& a : spec.arcs) check_arc_physics(a, out);
  for (const auto& node : spec.nodes) check_node_coefficients(node, spec.arcs, out);
  return out;
}

Network::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  std::sort(spec_.arcs.begin(), spec_.arcs.end(),
            [](const ArcSpec& a, const ArcSpec& b) { return a.id < b.id; });
  Resolution r = resolve(spec_);
  std::vector<std::string> problems;
  for (const auto& a : spec_.arcs) check_arc_physics(a, problems);
  for (const auto& node : spec_.nodes) check_node_coefficients(node, spec_.arcs, problems);
  if (!problems.empty()) {
    std::ostringstream os;
    os << "invalid network:";
    for (const auto& p : problems) os << "\n  " << p;
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < spec_.arcs.size(); ++i) {
    left_.push_back(*r.left[i]);
    right_.push_back(*r.right[i]);
  }
  node_arcs_ = std::move(r.node_arcs);
}

std::size_t Network::index_of(ArcId id) const { return sorted_index(spec_.arcs, id); }

const Attachment& Network::attachment(std::size_t arc, End end) const {
  return end == End::Left ? left_.at(arc) : right_.at(arc);
}

bool Network::dissipative() const {
  return std::all_of(spec_.nodes.begin(), spec_.nodes.end(),
                     [](const NodeSpec& n) { return validate_dissipative(n).dissipative; });
}

}  // namespace chemonet
