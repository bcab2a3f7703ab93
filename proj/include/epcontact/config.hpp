#pragma once

#include <optional>

#include "epcontact/contact.hpp"
#include "epcontact/kernels.hpp"

namespace epcontact {

/// Discretization pattern of the source manifold: an unordered point cloud
/// (counting measure) or a closed loop sampled at s_a = 2 pi a / n with the
/// uniform density 2 pi / n.
struct Topology {
  enum class Kind { PointCloud, Loop };

  Kind kind = Kind::PointCloud;
  int n = 0;

  static Topology points(int n);
  static Topology loop(int n);  // requires n >= 8

  /// Quadrature weight mu_a of one node.
  double node_weight() const;
  /// Loop parameter values s_a (Loop only).
  Vec parameters() const;

  bool operator==(const Topology&) const = default;
};

/// Tangent to a configuration: per-node position and weight velocities.
struct ConfigTangent {
  Mat dx;  // n x dim
  Vec dh;  // n
};

/// A weighted discrete configuration in a contact model: node positions x_a
/// and weights h_a != 0.  The effective momentum of a node is p_a = h_a mu_a.
/// Construction validates weights, finiteness, and that nodes are pairwise
/// distinct (for loops, non-adjacent nodes must stay eps-separated).
class WeightedConfig {
 public:
  WeightedConfig(ContactModel model, Topology topology, Mat positions,
                 Vec weights, double embed_tol_scale = 1e-6);

  /// Bypass the embedding validation (used for mid-flight snapshots, which
  /// carry a warning flag instead of failing hard).
  static WeightedConfig unchecked(ContactModel model, Topology topology,
                                  Mat positions, Vec weights);

  const ContactModel& model() const { return model_; }
  const Topology& topology() const { return topology_; }
  const Mat& positions() const { return positions_; }
  const Vec& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }
  Vec node(int a) const { return positions_.row(a).transpose(); }

  /// p_a = h_a mu_a.
  Vec effective_weights() const;

  /// Smallest pairwise node distance (chart-aware).
  double min_separation() const;
  /// Smallest distance between non-adjacent nodes (loops; equal to
  /// min_separation for point clouds).
  double min_nonadjacent_separation() const;
  double diameter() const;
  /// Embedding proxy used during dynamics: true when the non-adjacent
  /// separation clears embed_tol_scale * initial diameter.
  bool embedding_ok() const;

  /// Sampled loop velocity d(phi)/ds at every node (trigonometric
  /// differentiation; exact for trigonometric polynomials of degree < n/2).
  Mat loop_tangents() const;

  double embed_tol_scale() const { return embed_tol_scale_; }

 private:
  WeightedConfig() : model_(ContactModel::darboux(1)) {}
  void validate_shape() const;
  void validate_basic() const;

  ContactModel model_;
  Topology topology_;
  Mat positions_;
  Vec weights_;
  double embed_tol_scale_ = 1e-6;
};

/// Velocity field induced by the configuration through the kernel:
/// u(y) = sum_a p_a k(y, x_a), with gradient, and second derivatives for the
/// gaussian family.
ScalarField velocity_field(const WeightedConfig& config,
                           const KernelSpec& kernel);

/// Pairing of the configuration's momentum with a contact Hamiltonian:
/// sum_a p_a f(x_a).  Exactly invariant under node relabeling.
double moment_left_pair(const WeightedConfig& config, const ScalarField& f);

/// Per-node pullback density rho_a = h_a alpha_{x_a}(d(phi)/ds), the
/// discrete conserved quantity of reparametrization symmetry.  The density is
/// per unit s (not premultiplied by mu_a).  Zero array for point clouds.
Vec moment_right(const WeightedConfig& config);

/// Kinetic energy H = 1/2 sum_{a,b} p_a p_b k(x_a, x_b) (exactly rounded
/// reduction, so node relabeling cannot change the value).
double hamiltonian(const WeightedConfig& config, const KernelSpec& kernel);

/// True when max_a |rho_a| <= tol (point clouds are trivially isotropic).
bool is_isotropic(const WeightedConfig& config, double tol);

/// Resample a loop configuration onto a finer/coarser uniform grid by
/// trigonometric interpolation of positions and weights.
WeightedConfig resample_loop(const WeightedConfig& config, int new_n);

}  // namespace epcontact
