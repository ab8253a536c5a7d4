#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chemonet {

using ArcId = int;

/// Physical data of one arc, parametrized as [0, length].
struct ArcSpec {
  ArcId id = 0;
  double length = 1.0;       ///< L
  double lambda = 1.0;       ///< cell speed
  double diffusion = 1.0;    ///< D, chemoattractant diffusivity
  double production = 0.0;   ///< a
  double degradation = 0.0;  ///< b
};

/// Coupling data at an inner node.
///
/// Local arc numbering is `incoming` followed by `outgoing`; `xi` and `kappa`
/// are indexed in that order. An arc is incoming at a node when its right end
/// (x = L) touches the node and outgoing when its left end (x = 0) does.
struct NodeSpec {
  int id = 0;
  std::vector<ArcId> incoming;
  std::vector<ArcId> outgoing;
  Eigen::MatrixXd xi;
  Eigen::MatrixXd kappa;

  std::vector<ArcId> arcs() const;
  std::size_t degree() const { return incoming.size() + outgoing.size(); }
  bool is_incoming(std::size_t local) const { return local < incoming.size(); }
};

struct NetworkSpec {
  std::vector<ArcSpec> arcs;
  std::vector<NodeSpec> nodes;
  std::vector<ArcId> outer_incoming;  ///< arcs whose x = 0 end is an outer boundary
  std::vector<ArcId> outer_outgoing;  ///< arcs whose x = L end is an outer boundary
};

enum class End { Left, Right };

/// What an arc end is attached to.
struct Attachment {
  bool outer = true;
  std::size_t node = 0;   ///< node index (valid when !outer)
  std::size_t local = 0;  ///< position of the arc in the node's local list
};

// ---------------------------------------------------------------------------
// Validators (pure; they do not require a constructed Network)

struct FluxViolation {
  std::size_t column = 0;  ///< local index j
  ArcId arc = 0;
  double residual = 0.0;   ///< sum_i lambda_i xi_{i,j} - lambda_j
};

struct FluxReport {
  std::vector<FluxViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks sum_i lambda_i xi_{i,j} = lambda_j for every local column j,
/// within 1e-12 * lambda_j. Throws StructuralError for unknown arc ids.
FluxReport validate_flux_conservation(const NodeSpec& node, std::span<const ArcSpec> arcs);

struct DissipativityReport {
  bool dissipative = false;
  std::vector<double> row_sums;
};

/// Rows of xi sum to one (1e-12) and all entries lie in [0, 1].
DissipativityReport validate_dissipative(const NodeSpec& node);

/// The one-parameter family of dissipative 2x2 coefficients for one incoming
/// and one outgoing arc. Throws std::domain_error when xi11 is outside
/// [max(0, (lambda1 - lambda2)/lambda1), 1].
Eigen::Matrix2d two_arc_dissipative_family(double lambda1, double lambda2, double xi11);

/// Matrix with entries lambda_j (xi_{i,j} - delta_{i,j}) for the node.
Eigen::MatrixXd node_kernel_matrix(const NodeSpec& node, std::span<const ArcSpec> arcs);

/// Numerical nullity of node_kernel_matrix (singular values below 1e-10,
/// relative to the largest one).
int kernel_dimension(const NodeSpec& node, std::span<const ArcSpec> arcs);

/// Right singular vector for the smallest singular value, sign-flipped so its
/// largest-magnitude entry is positive and scaled to unit max-norm.
Eigen::VectorXd kernel_vector(const NodeSpec& node, std::span<const ArcSpec> arcs);

// ---------------------------------------------------------------------------

/// Validated, immutable network. Arcs are stored sorted by id; all per-arc
/// arrays elsewhere in the library use this order.
class Network {
 public:
  /// Throws StructuralError for topology problems and ValidationError when a
  /// node violates flux conservation, xi range, or kappa symmetry/sign.
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }
  std::size_t arc_count() const { return spec_.arcs.size(); }
  std::size_t node_count() const { return spec_.nodes.size(); }
  const ArcSpec& arc(std::size_t index) const { return spec_.arcs[index]; }
  std::span<const ArcSpec> arcs() const { return spec_.arcs; }
  const NodeSpec& node(std::size_t index) const { return spec_.nodes[index]; }

  std::size_t index_of(ArcId id) const;
  const Attachment& attachment(std::size_t arc, End end) const;

  /// Global arc indices of the node's local list.
  const std::vector<std::size_t>& node_arcs(std::size_t node) const { return node_arcs_[node]; }

  /// True when every node passes validate_dissipative.
  bool dissipative() const;

 private:
  NetworkSpec spec_;
  std::vector<Attachment> left_;
  std::vector<Attachment> right_;
  std::vector<std::vector<std::size_t>> node_arcs_;
};

/// Collects every structural and validation problem without throwing.
std::vector<std::string> validation_messages(const NetworkSpec& spec);

}  // namespace chemonet
