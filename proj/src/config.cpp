#include "epcontact/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "epcontact/errors.hpp"
#include "epcontact/spectral.hpp"

namespace epcontact {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Topology Topology::points(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "point cloud needs n >= 1");
  return Topology{Kind::PointCloud, n};
}

Topology Topology::loop(int n) {
  if (n < 8) {
    fail(ErrorCode::InvalidArgument,
         "loop topology needs n >= 8 for reliable differentiation");
  }
  return Topology{Kind::Loop, n};
}

double Topology::node_weight() const {
  return kind == Kind::Loop ? kTwoPi / n : 1.0;
}

Vec Topology::parameters() const {
  Vec s(n);
  for (int a = 0; a < n; ++a) s[a] = kTwoPi * a / n;
  return s;
}

// ---------------------------------------------------------------------------

WeightedConfig::WeightedConfig(ContactModel model, Topology topology,
                               Mat positions, Vec weights,
                               double embed_tol_scale)
    : model_(std::move(model)),
      topology_(topology),
      positions_(std::move(positions)),
      weights_(std::move(weights)),
      embed_tol_scale_(embed_tol_scale) {
  validate_basic();
  if (min_separation() <= 0.0) {
    fail(ErrorCode::DegenerateEmbedding, "coincident nodes in configuration");
  }
  if (topology_.kind == Topology::Kind::Loop) {
    const double floor = embed_tol_scale_ * diameter();
    if (min_nonadjacent_separation() <= floor) {
      fail(ErrorCode::DegenerateEmbedding,
           "non-adjacent loop nodes closer than embedding tolerance");
    }
  }
}

WeightedConfig WeightedConfig::unchecked(ContactModel model, Topology topology,
                                         Mat positions, Vec weights) {
  // Shape checks only: mid-flight integrator states may carry non-finite
  // values or vanishing weights, and the integrator itself turns those into
  // divergence / model-exit outcomes instead of hard errors.
  WeightedConfig c;
  c.model_ = std::move(model);
  c.topology_ = topology;
  c.positions_ = std::move(positions);
  c.weights_ = std::move(weights);
  c.validate_shape();
  return c;
}

void WeightedConfig::validate_shape() const {
  if (positions_.rows() != topology_.n ||
      static_cast<int>(weights_.size()) != topology_.n) {
    fail(ErrorCode::DimensionMismatch,
         "positions/weights do not match topology node count");
  }
  if (positions_.cols() != model_.dim()) {
    fail(ErrorCode::DimensionMismatch,
         "position columns do not match model dimension");
  }
}

void WeightedConfig::validate_basic() const {
  validate_shape();
  if (!positions_.allFinite() || !weights_.allFinite()) {
    fail(ErrorCode::InvalidArgument, "non-finite configuration data");
  }
  for (int a = 0; a < topology_.n; ++a) {
    if (weights_[a] == 0.0) {
      fail(ErrorCode::InvalidWeight,
           "node " + std::to_string(a) + " has zero weight");
    }
  }
}

Vec WeightedConfig::effective_weights() const {
  return weights_ * topology_.node_weight();
}

double WeightedConfig::min_separation() const {
  const int n = size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      best = std::min(best, model_.distance(node(a), node(b)));
    }
  }
  return best;
}

double WeightedConfig::min_nonadjacent_separation() const {
  const int n = size();
  if (topology_.kind != Topology::Kind::Loop) return min_separation();
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;  // adjacent around the seam
      best = std::min(best, model_.distance(node(a), node(b)));
    }
  }
  return best;
}

double WeightedConfig::diameter() const {
  const int n = size();
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      best = std::max(best, model_.distance(node(a), node(b)));
    }
  }
  return best;
}

bool WeightedConfig::embedding_ok() const {
  if (topology_.kind != Topology::Kind::Loop) return min_separation() > 0.0;
  return min_nonadjacent_separation() > embed_tol_scale_ * diameter();
}

Mat WeightedConfig::loop_tangents() const {
  if (topology_.kind != Topology::Kind::Loop) {
    fail(ErrorCode::InvalidArgument, "loop_tangents requires loop topology");
  }
  const int d = model_.dim();
  Mat tangents(size(), d);
  for (int c = 0; c < d; ++c) {
    if (c == model_.angular_axis()) {
      tangents.col(c) = periodic_derivative_angular(positions_.col(c));
    } else {
      tangents.col(c) = periodic_derivative(positions_.col(c));
    }
  }
  return tangents;
}

// ---------------------------------------------------------------------------

ScalarField velocity_field(const WeightedConfig& config,
                           const KernelSpec& kernel) {
  const ContactModel model = config.model();
  const Mat positions = config.positions();
  const Vec p = config.effective_weights();
  const int n = config.size();

  ScalarField u;
  u.value = [model, positions, p, kernel, n](const Vec& y) {
    CompensatedSum acc;
    for (int a = 0; a < n; ++a) {
      acc.add(p[a] * kernel.eval(model, y, positions.row(a).transpose()));
    }
    return acc.value();
  };
  u.gradient = [model, positions, p, kernel, n](const Vec& y) {
    const int d = y.size();
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(d));
    for (int a = 0; a < n; ++a) {
      const Vec g = kernel.grad1(model, y, positions.row(a).transpose());
      for (int i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)].add(p[a] * g[i]);
    }
    Vec out(d);
    for (int i = 0; i < d; ++i) out[i] = acc[static_cast<std::size_t>(i)].value();
    return out;
  };
  if (kernel.has_hessian()) {
    u.hessian = [model, positions, p, kernel, n](const Vec& y) {
      Mat h = Mat::Zero(y.size(), y.size());
      for (int a = 0; a < n; ++a) {
        h += p[a] * kernel.hess1(model, y, positions.row(a).transpose());
      }
      return h;
    };
  }
  return u;
}

double moment_left_pair(const WeightedConfig& config, const ScalarField& f) {
  const Vec p = config.effective_weights();
  ExactSum acc;
  for (int a = 0; a < config.size(); ++a) {
    acc.add(p[a] * f.value(config.node(a)));
  }
  return acc.value();
}

Vec moment_right(const WeightedConfig& config) {
  if (config.topology().kind != Topology::Kind::Loop) {
    return Vec::Zero(config.size());
  }
  const Mat tangents = config.loop_tangents();
  Vec rho(config.size());
  for (int a = 0; a < config.size(); ++a) {
    rho[a] = config.weights()[a] *
             config.model().alpha_pair(config.node(a), tangents.row(a).transpose());
  }
  return rho;
}

double hamiltonian(const WeightedConfig& config, const KernelSpec& kernel) {
  const ContactModel& model = config.model();
  const Vec p = config.effective_weights();
  const int n = config.size();
  ExactSum acc;
  for (int a = 0; a < n; ++a) {
    const Vec xa = config.node(a);
    for (int b = 0; b < n; ++b) {
      acc.add(0.5 * p[a] * p[b] * kernel.eval(model, xa, config.node(b)));
    }
  }
  return acc.value();
}

bool is_isotropic(const WeightedConfig& config, double tol) {
  if (config.topology().kind != Topology::Kind::Loop) return true;
  return moment_right(config).cwiseAbs().maxCoeff() <= tol;
}

WeightedConfig resample_loop(const WeightedConfig& config, int new_n) {
  if (config.topology().kind != Topology::Kind::Loop) {
    fail(ErrorCode::InvalidArgument, "resample_loop requires loop topology");
  }
  const Topology topo = Topology::loop(new_n);
  const Vec s = topo.parameters();
  const int d = config.model().dim();
  Mat positions(new_n, d);
  for (int c = 0; c < d; ++c) {
    if (c == config.model().angular_axis()) {
      positions.col(c) = trig_interpolate_angular(config.positions().col(c), s);
    } else {
      positions.col(c) = trig_interpolate(config.positions().col(c), s);
    }
  }
  const Vec weights = trig_interpolate(config.weights(), s);
  return WeightedConfig(config.model(), topo, std::move(positions), weights,
                        config.embed_tol_scale());
}

}  // namespace epcontact
