#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epcontact/config.hpp"

namespace epcontact {

struct IntegratorSpec {
  enum class Method { RK4, RK4Adaptive };

  Method method = Method::RK4;
  double dt = 1e-3;      // fixed step, or initial step for the adaptive mode
  double t_final = 1.0;
  double tol = 1e-8;     // adaptive local error target per step
};

/// Per-snapshot monitors.  Drift fields compare against the run's initial
/// snapshot when a reference is supplied.
struct Diagnostics {
  double energy = 0.0;
  Vec rho;
  double total_weight = 0.0;
  double min_separation = 0.0;
  double rel_energy_drift = 0.0;
  double max_rho_drift = 0.0;
  bool embedding_warning = false;
};

enum class RunStatus { Completed, ModelExit, Divergence };

std::string run_status_name(RunStatus status);

/// A node weight reached zero mid-step: the state left the open stratum the
/// dynamics lives on.  Reported with the offending node and step bracket.
struct ModelExitEvent {
  int node = -1;
  double t_low = 0.0;
  double t_high = 0.0;
};

struct TrajectorySample {
  double time;
  WeightedConfig config;
  Diagnostics diagnostics;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  RunStatus status = RunStatus::Completed;
  std::optional<ModelExitEvent> exit_event;
  std::string message;

  double initial_energy() const;
  double max_rel_energy_drift() const;
  double max_rho_drift() const;
  double min_separation() const;
  const WeightedConfig& final_config() const;
};

/// Evolution direction of the configuration: each node follows the contact
/// field of the induced velocity u, and its weight follows the lifted fiber
/// velocity: dx_a = X_u(x_a), dh_a = -h_a (E.u)(x_a).
ConfigTangent rhs(const WeightedConfig& config, const KernelSpec& kernel);

/// Independent route to the same direction: block-diagonal symplectization
/// form per node, central finite differences of the kinetic energy, and one
/// linear solve of i_xi omega = -dH per node.  Shares no code with rhs()
/// beyond the kernel itself.
ConfigTangent oracle_rhs(const WeightedConfig& config, const KernelSpec& kernel,
                         double fd_scale = 1e-5);

Diagnostics diagnostics_snapshot(const WeightedConfig& config,
                                 const KernelSpec& kernel,
                                 const Diagnostics* reference = nullptr,
                                 double embed_floor = 0.0);

/// March the configuration from t=0 to t_final, observing every
/// observe_every accepted steps.  NaN/divergence and weight sign changes end
/// the run early with the last valid state preserved.
Trajectory integrate(const WeightedConfig& config, const KernelSpec& kernel,
                     const IntegratorSpec& spec, int observe_every = 10);

}  // namespace epcontact
