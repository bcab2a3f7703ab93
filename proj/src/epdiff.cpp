#include "epcontact/epdiff.hpp"

#include <cmath>
#include <ostream>

#include "epcontact/errors.hpp"

namespace epcontact {

PlanarField PlanarField::polynomial(const Polynomial& y1, const Polynomial& y2) {
  if (y1.dim() != 2 || y2.dim() != 2) {
    fail(ErrorCode::DimensionMismatch, "planar field components must be bivariate");
  }
  PlanarField f;
  f.value = [y1, y2](const Eigen::Vector2d& q) {
    return Eigen::Vector2d(y1.value(q), y2.value(q));
  };
  f.jacobian = [y1, y2](const Eigen::Vector2d& q) {
    Eigen::Matrix2d j;
    j.row(0) = y1.gradient(q).transpose();
    j.row(1) = y2.gradient(q).transpose();
    return j;
  };
  return f;
}

PlanarField PlanarField::constant(const Eigen::Vector2d& v) {
  PlanarField f;
  f.value = [v](const Eigen::Vector2d&) { return v; };
  f.jacobian = [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Zero(); };
  return f;
}

Covector2 kappa(const Eigen::Vector2d& q, double theta, double t) {
  if (t == 0.0) {
    fail(ErrorCode::InvalidArgument, "kappa is undefined on the zero section");
  }
  return Covector2{q, t * Eigen::Vector2d(std::cos(theta), std::sin(theta))};
}

ScalarField lift_hamiltonian(const PlanarField& y) {
  ScalarField f;
  f.value = [y](const Vec& x) {
    const Eigen::Vector2d v = y.value(x.head<2>());
    return std::cos(x[2]) * v[0] + std::sin(x[2]) * v[1];
  };
  f.gradient = [y](const Vec& x) {
    const Eigen::Vector2d q = x.head<2>();
    const Eigen::Vector2d v = y.value(q);
    const Eigen::Matrix2d j = y.jacobian(q);
    const double ct = std::cos(x[2]), st = std::sin(x[2]);
    Vec g(3);
    g[0] = ct * j(0, 0) + st * j(1, 0);
    g[1] = ct * j(0, 1) + st * j(1, 1);
    g[2] = -st * v[0] + ct * v[1];
    return g;
  };
  return f;
}

// ---------------------------------------------------------------------------

LandmarkConfig::LandmarkConfig(Unchecked, Mat q, Mat p)
    : q_(std::move(q)), p_(std::move(p)) {
  if (q_.cols() != 2 || p_.cols() != 2 || q_.rows() != p_.rows() ||
      q_.rows() < 1) {
    fail(ErrorCode::DimensionMismatch, "landmarks need matching n x 2 arrays");
  }
}

LandmarkConfig::LandmarkConfig(Mat q, Mat p)
    : LandmarkConfig(Unchecked{}, std::move(q), std::move(p)) {
  if (!q_.allFinite() || !p_.allFinite()) {
    fail(ErrorCode::InvalidArgument, "non-finite landmark data");
  }
  for (int a = 0; a < q_.rows(); ++a) {
    for (int b = a + 1; b < q_.rows(); ++b) {
      if ((q_.row(a) - q_.row(b)).norm() == 0.0) {
        fail(ErrorCode::DegenerateEmbedding, "coincident landmark base points");
      }
    }
  }
}

LandmarkConfig LandmarkConfig::unchecked(Mat q, Mat p) {
  return LandmarkConfig(Unchecked{}, std::move(q), std::move(p));
}

LandmarkTangent epdiff_rhs(const LandmarkConfig& config,
                           const KernelSpec& kernel) {
  const int n = config.size();
  LandmarkTangent out;
  out.dq = Mat::Zero(n, 2);
  out.dp = Mat::Zero(n, 2);
  for (int a = 0; a < n; ++a) {
    const Vec qa = config.q().row(a).transpose();
    CompensatedSum dq0, dq1, dp0, dp1;
    for (int b = 0; b < n; ++b) {
      const Vec qb = config.q().row(b).transpose();
      const double k = kernel.eval(qa, qb);
      dq0.add(k * config.p()(b, 0));
      dq1.add(k * config.p()(b, 1));
      const double pdot = config.p().row(a).dot(config.p().row(b));
      const Vec g = kernel.grad1(qa, qb);
      dp0.add(-pdot * g[0]);
      dp1.add(-pdot * g[1]);
    }
    out.dq(a, 0) = dq0.value();
    out.dq(a, 1) = dq1.value();
    out.dp(a, 0) = dp0.value();
    out.dp(a, 1) = dp1.value();
  }
  return out;
}

double landmark_hamiltonian(const LandmarkConfig& config,
                            const KernelSpec& kernel) {
  const int n = config.size();
  ExactSum acc;
  for (int a = 0; a < n; ++a) {
    const Vec qa = config.q().row(a).transpose();
    for (int b = 0; b < n; ++b) {
      acc.add(0.5 * config.p().row(a).dot(config.p().row(b)) *
              kernel.eval(qa, config.q().row(b).transpose()));
    }
  }
  return acc.value();
}

LandmarkTrajectory integrate_landmarks(const LandmarkConfig& config,
                                       const KernelSpec& kernel,
                                       const IntegratorSpec& spec,
                                       int observe_every) {
  if (!(spec.dt > 0.0) || !(spec.t_final >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "integrator needs dt > 0 and T >= 0");
  }
  const int n = config.size();

  auto pack = [n](const LandmarkConfig& c) {
    Vec y(4 * n);
    for (int a = 0; a < n; ++a) {
      y.segment(4 * a, 2) = c.q().row(a).transpose();
      y.segment(4 * a + 2, 2) = c.p().row(a).transpose();
    }
    return y;
  };
  auto unpack = [n](const Vec& y) {
    Mat q(n, 2), p(n, 2);
    for (int a = 0; a < n; ++a) {
      q.row(a) = y.segment(4 * a, 2).transpose();
      p.row(a) = y.segment(4 * a + 2, 2).transpose();
    }
    // Mid-flight states may pass arbitrarily close to a base collision; the
    // integrator reports on them rather than validating them.
    return LandmarkConfig::unchecked(std::move(q), std::move(p));
  };
  auto flat_rhs = [&](const Vec& y) {
    const LandmarkTangent t = epdiff_rhs(unpack(y), kernel);
    Vec dy(4 * n);
    for (int a = 0; a < n; ++a) {
      dy.segment(4 * a, 2) = t.dq.row(a).transpose();
      dy.segment(4 * a + 2, 2) = t.dp.row(a).transpose();
    }
    return dy;
  };

  LandmarkTrajectory traj;
  auto observe = [&](double time, const Vec& y) {
    LandmarkConfig c = unpack(y);
    traj.energies.push_back(landmark_hamiltonian(c, kernel));
    traj.times.push_back(time);
    traj.states.push_back(std::move(c));
  };

  Vec y = pack(config);
  observe(0.0, y);
  double t = 0.0;
  int steps = 0;
  while (t < spec.t_final) {
    const double step = std::min(spec.dt, spec.t_final - t);
    const Vec y_next = rk4_step(y, step, flat_rhs);
    if (!y_next.allFinite()) {
      traj.status = RunStatus::Divergence;
      traj.message = "non-finite landmark state near t=" + std::to_string(t);
      return traj;
    }
    y = y_next;
    t += step;
    ++steps;
    if (steps % observe_every == 0 && t < spec.t_final) observe(t, y);
  }
  if (spec.t_final > 0.0) observe(t, y);
  return traj;
}

LandmarkConfig to_landmarks(const WeightedConfig& config, BasePolicy policy,
                            std::ostream* warnings) {
  if (config.model().kind() != ContactModel::Kind::Projectivized2) {
    fail(ErrorCode::InvalidArgument,
         "landmark pushforward requires the projectivized planar model");
  }
  const int n = config.size();
  const Vec p_eff = config.effective_weights();
  Mat q(n, 2), p(n, 2);
  for (int a = 0; a < n; ++a) {
    const Vec x = config.node(a);
    const Covector2 cv = kappa(x.head<2>(), x[2], p_eff[a]);
    q.row(a) = cv.q.transpose();
    p.row(a) = cv.p.transpose();
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if ((q.row(a) - q.row(b)).norm() == 0.0) {
        if (policy == BasePolicy::Reject) {
          fail(ErrorCode::DegenerateEmbedding,
               "coincident base points under pushforward");
        }
        if (warnings != nullptr) {
          *warnings << "warning: nodes " << a << " and " << b
                    << " share a base point after pushforward\n";
        }
      }
    }
  }
  // Distinct nodes can legally share a base point after projection, so the
  // warn policy must still deliver the configuration.
  return LandmarkConfig::unchecked(std::move(q), std::move(p));
}

double check_diagram(const WeightedConfig& config, const PlanarField& y) {
  if (config.model().kind() != ContactModel::Kind::Projectivized2) {
    fail(ErrorCode::InvalidArgument, "diagram check uses the projectivized model");
  }
  const double contact_side = moment_left_pair(config, lift_hamiltonian(y));

  const Vec p_eff = config.effective_weights();
  ExactSum landmark_side;
  for (int a = 0; a < config.size(); ++a) {
    const Vec x = config.node(a);
    const Covector2 cv = kappa(x.head<2>(), x[2], p_eff[a]);
    landmark_side.add(cv.p.dot(y.value(cv.q)));
  }
  return std::fabs(contact_side - landmark_side.value());
}

double check_theta_pullback(const Eigen::Vector2d& q, double theta, double t,
                            const Eigen::Vector4d& v, double fd_step) {
  if (!(fd_step > 0.0)) fail(ErrorCode::InvalidArgument, "fd_step must be > 0");
  auto chart = [](const Eigen::Vector4d& u) {
    const Covector2 cv =
        kappa(Eigen::Vector2d(u[0], u[1]), u[2], u[3]);
    Eigen::Vector4d out;
    out << cv.q, cv.p;
    return out;
  };
  Eigen::Vector4d x;
  x << q, theta, t;

  // T kappa . v by central differences, then pair with the canonical form
  // p . dq at the image point.
  const Eigen::Vector4d jv =
      (chart(x + fd_step * v) - chart(x - fd_step * v)) / (2.0 * fd_step);
  const Covector2 image = kappa(q, theta, t);
  const double canonical = image.p[0] * jv[0] + image.p[1] * jv[1];

  const ContactModel model = ContactModel::projectivized2();
  Eigen::Vector3d base_point(q[0], q[1], theta);
  Eigen::Vector3d base_velocity(v[0], v[1], v[2]);
  const double lifted = t * model.alpha_pair(base_point, base_velocity);
  return std::fabs(canonical - lifted);
}

}  // namespace epcontact
