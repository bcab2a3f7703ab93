#include "epcontact/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epcontact/errors.hpp"

namespace epcontact {

std::string run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::Completed:
      return "completed";
    case RunStatus::ModelExit:
      return "model-exit";
    case RunStatus::Divergence:
      return "divergence";
  }
  return "unknown";
}

double Trajectory::initial_energy() const {
  return samples.empty() ? 0.0 : samples.front().diagnostics.energy;
}

double Trajectory::max_rel_energy_drift() const {
  double worst = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, std::fabs(s.diagnostics.rel_energy_drift));
  }
  return worst;
}

double Trajectory::max_rho_drift() const {
  double worst = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, s.diagnostics.max_rho_drift);
  }
  return worst;
}

double Trajectory::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    best = std::min(best, s.diagnostics.min_separation);
  }
  return best;
}

const WeightedConfig& Trajectory::final_config() const {
  if (samples.empty()) fail(ErrorCode::InvalidArgument, "empty trajectory");
  return samples.back().config;
}

// ---------------------------------------------------------------------------

ConfigTangent rhs(const WeightedConfig& config, const KernelSpec& kernel) {
  const ScalarField u = velocity_field(config, kernel);
  const ContactModel& model = config.model();
  const int n = config.size();
  ConfigTangent out;
  out.dx.resize(n, model.dim());
  out.dh.resize(n);
  for (int a = 0; a < n; ++a) {
    const Vec xa = config.node(a);
    const auto [dx, dh_rate] = lifted_generator(model, u, xa, 1.0);
    out.dx.row(a) = dx.transpose();
    out.dh[a] = config.weights()[a] * dh_rate;  // dh = -h (E.u)(x_a)
  }
  return out;
}

ConfigTangent oracle_rhs(const WeightedConfig& config, const KernelSpec& kernel,
                         double fd_scale) {
  const ContactModel& model = config.model();
  const int n = config.size();
  const int d = model.dim();
  const double mu = config.topology().node_weight();

  // dH by central differences, one coordinate (or weight) at a time.
  auto energy_at = [&](const Mat& pos, const Vec& w) {
    return hamiltonian(
        WeightedConfig::unchecked(model, config.topology(), pos, w), kernel);
  };

  ConfigTangent out;
  out.dx.resize(n, d);
  out.dh.resize(n);
  for (int a = 0; a < n; ++a) {
    Vec grad(d + 1);
    for (int c = 0; c < d; ++c) {
      const double step = fd_scale * (1.0 + std::fabs(config.positions()(a, c)));
      Mat plus = config.positions();
      Mat minus = config.positions();
      plus(a, c) += step;
      minus(a, c) -= step;
      grad[c] = (energy_at(plus, config.weights()) -
                 energy_at(minus, config.weights())) /
                (2.0 * step);
    }
    {
      const double step = fd_scale * (1.0 + std::fabs(config.weights()[a]));
      Vec plus = config.weights();
      Vec minus = config.weights();
      plus[a] += step;
      minus[a] -= step;
      grad[d] = (energy_at(config.positions(), plus) -
                 energy_at(config.positions(), minus)) /
                (2.0 * step);
    }

    // i_xi (mu_a Omega_a) = -dH_a  =>  (mu_a Omega_a) xi = dH_a
    // (Omega is antisymmetric, so transposing flips the sign).
    const Mat omega =
        mu * symplectization_omega(model, config.node(a), config.weights()[a]);
    Eigen::FullPivLU<Mat> lu(omega);
    if (!lu.isInvertible()) {
      fail(ErrorCode::SingularSystem,
           "symplectization form degenerate (weight too close to zero?)");
    }
    const Vec xi = lu.solve(grad);
    out.dx.row(a) = xi.head(d).transpose();
    out.dh[a] = xi[d];
  }
  return out;
}

// ---------------------------------------------------------------------------

Diagnostics diagnostics_snapshot(const WeightedConfig& config,
                                 const KernelSpec& kernel,
                                 const Diagnostics* reference,
                                 double embed_floor) {
  Diagnostics d;
  d.energy = hamiltonian(config, kernel);
  d.rho = moment_right(config);
  {
    ExactSum acc;
    const Vec p = config.effective_weights();
    for (int a = 0; a < config.size(); ++a) acc.add(p[a]);
    d.total_weight = acc.value();
  }
  d.min_separation = config.min_separation();
  if (config.topology().kind == Topology::Kind::Loop && embed_floor > 0.0) {
    d.embedding_warning = config.min_nonadjacent_separation() <= embed_floor;
  }
  if (reference != nullptr) {
    const double h0 = reference->energy;
    d.rel_energy_drift =
        (h0 != 0.0) ? (d.energy - h0) / std::fabs(h0) : d.energy - h0;
    if (d.rho.size() == reference->rho.size() && d.rho.size() > 0) {
      d.max_rho_drift = (d.rho - reference->rho).cwiseAbs().maxCoeff();
    }
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace {

struct FlatState {
  static Vec pack(const WeightedConfig& c) {
    const int n = c.size();
    const int d = c.model().dim();
    Vec y(n * (d + 1));
    for (int a = 0; a < n; ++a) {
      y.segment(a * d, d) = c.positions().row(a).transpose();
    }
    y.tail(n) = c.weights();
    return y;
  }

  static WeightedConfig unpack(const Vec& y, const WeightedConfig& like) {
    const int n = like.size();
    const int d = like.model().dim();
    Mat pos(n, d);
    for (int a = 0; a < n; ++a) pos.row(a) = y.segment(a * d, d).transpose();
    return WeightedConfig::unchecked(like.model(), like.topology(), pos,
                                     y.tail(n));
  }

  static Vec pack_tangent(const ConfigTangent& t) {
    const int n = static_cast<int>(t.dh.size());
    const int d = static_cast<int>(t.dx.cols());
    Vec y(n * (d + 1));
    for (int a = 0; a < n; ++a) y.segment(a * d, d) = t.dx.row(a).transpose();
    y.tail(n) = t.dh;
    return y;
  }
};

}  // namespace

Trajectory integrate(const WeightedConfig& config, const KernelSpec& kernel,
                     const IntegratorSpec& spec, int observe_every) {
  if (!(spec.dt > 0.0) || !(spec.t_final >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "integrator needs dt > 0 and T >= 0");
  }
  if (observe_every < 1) {
    fail(ErrorCode::InvalidArgument, "observe_every must be >= 1");
  }
  const int n = config.size();
  const double embed_floor =
      config.topology().kind == Topology::Kind::Loop
          ? config.embed_tol_scale() * config.diameter()
          : 0.0;

  auto flat_rhs = [&](const Vec& y) {
    return FlatState::pack_tangent(
        rhs(FlatState::unpack(y, config), kernel));
  };

  Trajectory traj;
  Diagnostics ref = diagnostics_snapshot(config, kernel, nullptr, embed_floor);
  Diagnostics first = diagnostics_snapshot(config, kernel, &ref, embed_floor);
  traj.samples.push_back({0.0, config, first});
  if (spec.t_final == 0.0) return traj;

  Vec y = FlatState::pack(config);
  double t = 0.0;
  double dt = spec.dt;
  const bool adaptive = spec.method == IntegratorSpec::Method::RK4Adaptive;
  int accepted = 0;

  auto observe = [&](double time, const Vec& state) {
    const WeightedConfig snap = FlatState::unpack(state, config);
    traj.samples.push_back(
        {time, snap, diagnostics_snapshot(snap, kernel, &ref, embed_floor)});
  };

  const double t_end = spec.t_final;
  while (t < t_end) {
    double step = std::min(dt, t_end - t);
    Vec y_next;
    if (!adaptive) {
      y_next = rk4_step(y, step, flat_rhs);
    } else {
      // Step doubling: compare one full step against two half steps and keep
      // the local error below tol (scaled by state magnitude).
      for (;;) {
        const Vec big = rk4_step(y, step, flat_rhs);
        const Vec half = rk4_step(y, 0.5 * step, flat_rhs);
        const Vec two = rk4_step(half, 0.5 * step, flat_rhs);
        if (!big.allFinite() || !two.allFinite()) {
          y_next = big;  // handed to the divergence check below
          break;
        }
        double err = 0.0;
        for (int i = 0; i < y.size(); ++i) {
          err = std::max(err, std::fabs(big[i] - two[i]) /
                                  (15.0 * (1.0 + std::fabs(y[i]))));
        }
        if (err <= spec.tol || step <= 1e-14) {
          y_next = two;
          if (err < spec.tol / 64.0) dt = std::min(2.0 * step, spec.dt * 1e6);
          else dt = step;
          break;
        }
        step *= 0.5;
      }
    }

    if (!y_next.allFinite()) {
      traj.status = RunStatus::Divergence;
      traj.message = "non-finite state between t=" + std::to_string(t) +
                     " and t=" + std::to_string(t + step);
      break;
    }
    // A weight reaching zero leaves the configuration space.
    {
      int bad = -1;
      for (int a = 0; a < n; ++a) {
        const double before = y[y.size() - n + a];
        const double after = y_next[y_next.size() - n + a];
        if (after == 0.0 || (before > 0.0) != (after > 0.0)) {
          bad = a;
          break;
        }
      }
      if (bad >= 0) {
        traj.status = RunStatus::ModelExit;
        traj.exit_event = ModelExitEvent{bad, t, t + step};
        traj.message = "weight of node " + std::to_string(bad) +
                       " crossed zero between t=" + std::to_string(t) +
                       " and t=" + std::to_string(t + step);
        break;
      }
    }

    y = y_next;
    t += step;
    ++accepted;
    if (accepted % observe_every == 0 && t < t_end) observe(t, y);
    if (t >= t_end) break;
  }

  if (traj.status == RunStatus::Completed) {
    observe(t, y);
  } else if (traj.samples.back().time < t) {
    observe(t, y);  // last valid state before the event
  }
  return traj;
}

}  // namespace epcontact
