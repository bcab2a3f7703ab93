#include "epcontact/verify.hpp"

#include <cmath>

#include "epcontact/errors.hpp"
#include "epcontact/spectral.hpp"

namespace epcontact {

double ReparamField::value(double s) const {
  ExactSum acc;
  acc.add(constant);
  for (int k = 0; k < cos_coeffs.size(); ++k) {
    acc.add(cos_coeffs[k] * std::cos((k + 1) * s));
  }
  for (int k = 0; k < sin_coeffs.size(); ++k) {
    acc.add(sin_coeffs[k] * std::sin((k + 1) * s));
  }
  return acc.value();
}

double ReparamField::derivative(double s) const {
  ExactSum acc;
  for (int k = 0; k < cos_coeffs.size(); ++k) {
    acc.add(-cos_coeffs[k] * (k + 1) * std::sin((k + 1) * s));
  }
  for (int k = 0; k < sin_coeffs.size(); ++k) {
    acc.add(sin_coeffs[k] * (k + 1) * std::cos((k + 1) * s));
  }
  return acc.value();
}

ReparamField ReparamField::constant_field(double c) {
  ReparamField z;
  z.constant = c;
  return z;
}

// ---------------------------------------------------------------------------

double omega_pair(const WeightedConfig& config, const ConfigTangent& a,
                  const ConfigTangent& b) {
  const int n = config.size();
  const int d = config.model().dim();
  if (a.dx.rows() != n || b.dx.rows() != n || a.dh.size() != n ||
      b.dh.size() != n || a.dx.cols() != d || b.dx.cols() != d) {
    fail(ErrorCode::DimensionMismatch, "tangents do not match configuration");
  }
  const double mu = config.topology().node_weight();
  ExactSum acc;
  for (int i = 0; i < n; ++i) {
    const Mat w =
        symplectization_omega(config.model(), config.node(i), config.weights()[i]);
    Vec ea(d + 1), eb(d + 1);
    ea.head(d) = a.dx.row(i).transpose();
    ea[d] = a.dh[i];
    eb.head(d) = b.dx.row(i).transpose();
    eb[d] = b.dh[i];
    acc.add(mu * ea.dot(w * eb));
  }
  return acc.value();
}

ConfigTangent generator_contact(const WeightedConfig& config,
                                const ScalarField& f) {
  const int n = config.size();
  const ContactModel& model = config.model();
  ConfigTangent t;
  t.dx.resize(n, model.dim());
  t.dh.resize(n);
  for (int a = 0; a < n; ++a) {
    const auto [dx, dh] =
        lifted_generator(model, f, config.node(a), config.weights()[a]);
    t.dx.row(a) = dx.transpose();
    t.dh[a] = dh;
  }
  return t;
}

ConfigTangent generator_reparam(const WeightedConfig& config,
                                const ReparamField& z) {
  if (config.topology().kind != Topology::Kind::Loop) {
    fail(ErrorCode::InvalidArgument, "reparametrization needs loop topology");
  }
  const int n = config.size();
  const Vec s = config.topology().parameters();
  const Mat tangents = config.loop_tangents();

  ConfigTangent t;
  t.dx.resize(n, config.model().dim());
  Vec hz(n);
  for (int a = 0; a < n; ++a) {
    const double za = z.value(s[a]);
    t.dx.row(a) = tangents.row(a) * za;
    hz[a] = config.weights()[a] * za;
  }
  t.dh = periodic_derivative(hz);
  return t;
}

double check_orthogonality(const WeightedConfig& config, const ScalarField& f,
                           const ReparamField& z) {
  return std::fabs(
      omega_pair(config, generator_contact(config, f), generator_reparam(config, z)));
}

double check_moment_identity(const WeightedConfig& config, const ScalarField& f,
                             const ConfigTangent& probe, double fd_step) {
  const double lhs = omega_pair(config, generator_contact(config, f), probe);

  auto moved = [&](double eps) {
    Mat pos = config.positions() + eps * probe.dx;
    Vec w = config.weights() + eps * probe.dh;
    return moment_left_pair(
        WeightedConfig::unchecked(config.model(), config.topology(),
                                  std::move(pos), std::move(w)),
        f);
  };
  const double directional =
      (moved(fd_step) - moved(-fd_step)) / (2.0 * fd_step);
  return std::fabs(lhs + directional);
}

WeightedConfig apply_contact_flow(const WeightedConfig& config,
                                  const ScalarField& f, double flow_time,
                                  double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "flow needs dt > 0");
  const ContactModel& model = config.model();
  const int d = model.dim();

  // Nodes flow independently; evolve each (x_a, h_a) with RK4.
  auto node_rhs = [&](const Vec& y) {
    Vec dy(d + 1);
    const Vec x = y.head(d);
    const auto [dx, dh] = lifted_generator(model, f, x, y[d]);
    dy.head(d) = dx;
    dy[d] = dh;
    return dy;
  };

  Mat pos = config.positions();
  Vec w = config.weights();
  for (int a = 0; a < config.size(); ++a) {
    Vec y(d + 1);
    y.head(d) = config.node(a);
    y[d] = config.weights()[a];
    double t = 0.0;
    const double total = std::fabs(flow_time);
    const double dir = flow_time < 0.0 ? -1.0 : 1.0;
    while (t < total) {
      const double step = std::min(dt, total - t);
      y = rk4_step(y, dir * step, node_rhs);
      t += step;
    }
    pos.row(a) = y.head(d).transpose();
    w[a] = y[d];
  }
  return WeightedConfig::unchecked(model, config.topology(), std::move(pos),
                                   std::move(w));
}

double check_jr_invariance(const WeightedConfig& config, const ScalarField& f,
                           double flow_time, const IntegratorSpec& spec) {
  if (config.topology().kind != Topology::Kind::Loop) {
    fail(ErrorCode::InvalidArgument, "invariance check needs loop topology");
  }
  const Vec before = moment_right(config);
  const WeightedConfig after =
      apply_contact_flow(config, f, flow_time, spec.dt);
  const Vec rho_after = moment_right(after);
  return (rho_after - before).cwiseAbs().maxCoeff();
}

}  // namespace epcontact
