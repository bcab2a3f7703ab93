#pragma once

#include <iosfwd>

#include "epcontact/dynamics.hpp"

namespace epcontact {

/// Nonzero covector over the plane.
struct Covector2 {
  Eigen::Vector2d q;
  Eigen::Vector2d p;
};

/// Planar vector field with Jacobian, used both as test data and to build
/// fiber-linear contact Hamiltonians over the projectivized model.
struct PlanarField {
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> value;
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> jacobian;

  static PlanarField polynomial(const Polynomial& y1, const Polynomial& y2);
  static PlanarField constant(const Eigen::Vector2d& v);
};

/// Chart map from the projectivized model's symplectization to punctured
/// planar covectors: (q, theta, t) -> (q, t (cos theta, sin theta)).
/// It intertwines the canonical 1-forms and identifies (theta + pi, -t)
/// with (theta, t).  t = 0 is outside the domain.
Covector2 kappa(const Eigen::Vector2d& q, double theta, double t);

/// Fiber-linear contact Hamiltonian of a planar field:
/// f(q, theta) = cos(theta) Y1(q) + sin(theta) Y2(q).  The symplectization
/// Hamiltonian is t * f via the fiber trivialization.
ScalarField lift_hamiltonian(const PlanarField& y);

/// Point-vortex-style landmark configuration (q_a, p_a), p folded momenta.
class LandmarkConfig {
 public:
  LandmarkConfig(Mat q, Mat p);

  /// Shape checks only: accepts coincident base points, for states that are
  /// produced by the integrator or pushed forward under a warn policy.
  static LandmarkConfig unchecked(Mat q, Mat p);

  const Mat& q() const { return q_; }
  const Mat& p() const { return p_; }
  int size() const { return static_cast<int>(q_.rows()); }

 private:
  struct Unchecked {};
  LandmarkConfig(Unchecked, Mat q, Mat p);

  Mat q_, p_;  // n x 2 each
};

struct LandmarkTangent {
  Mat dq, dp;
};

/// Geodesic landmark equations on the plane:
///   dq_a = sum_b k(q_a, q_b) p_b,
///   dp_a = -sum_b (p_a . p_b) grad1 k(q_a, q_b).
LandmarkTangent epdiff_rhs(const LandmarkConfig& config,
                           const KernelSpec& kernel);

double landmark_hamiltonian(const LandmarkConfig& config,
                            const KernelSpec& kernel);

struct LandmarkTrajectory {
  std::vector<double> times;
  std::vector<LandmarkConfig> states;
  std::vector<double> energies;
  RunStatus status = RunStatus::Completed;
  std::string message;
};

LandmarkTrajectory integrate_landmarks(const LandmarkConfig& config,
                                       const KernelSpec& kernel,
                                       const IntegratorSpec& spec,
                                       int observe_every = 10);

enum class BasePolicy { Warn, Reject };

/// Push a projectivized-model configuration to landmark covectors through
/// kappa, p_a = h_a mu_a (cos theta_a, sin theta_a).  Coincident base points
/// q_a are legal on the contact side but not for landmarks; policy decides
/// between a warning and a hard error.
LandmarkConfig to_landmarks(const WeightedConfig& config,
                            BasePolicy policy = BasePolicy::Warn,
                            std::ostream* warnings = nullptr);

/// | <momentum, lift(Y)> - sum_a p_a . Y(q_a) |: the contact-side pairing
/// against a lifted field equals the landmark-side pairing after kappa.
double check_diagram(const WeightedConfig& config, const PlanarField& y);

/// |theta_can(T kappa v) - t alpha(v)| at (q, theta, t) with T kappa taken by
/// central differences: kappa pulls the canonical 1-form back to t alpha.
double check_theta_pullback(const Eigen::Vector2d& q, double theta, double t,
                            const Eigen::Vector4d& v, double fd_step = 1e-6);

}  // namespace epcontact
