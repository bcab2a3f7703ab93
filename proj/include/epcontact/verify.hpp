#pragma once

#include "epcontact/dynamics.hpp"

namespace epcontact {

/// Periodic reparametrization velocity Z(s) on the loop parameter, stored as
/// a trigonometric polynomial so its derivative is available in closed form.
struct ReparamField {
  double constant = 0.0;
  Vec cos_coeffs;  // coefficient of cos(k s), k = 1..degree
  Vec sin_coeffs;  // coefficient of sin(k s)

  double value(double s) const;
  double derivative(double s) const;

  static ReparamField constant_field(double c);
};

/// Discrete symplectic pairing sum_a mu_a Omega^a(a_t, b_t) with Omega^a the
/// symplectization form at (x_a, h_a).
double omega_pair(const WeightedConfig& config, const ConfigTangent& a,
                  const ConfigTangent& b);

/// Generator of the contact action on configurations: node-wise lifted flow
/// (X_f(x_a), -h_a lambda_f(x_a)).
ConfigTangent generator_contact(const WeightedConfig& config,
                                const ScalarField& f);

/// Generator of loop reparametrization: dx_a = (dphi/ds)(s_a) Z(s_a) and
/// dh_a = d/ds[h Z](s_a), the product differentiated by the same spectral
/// stencil used for the loop tangents.
ConfigTangent generator_reparam(const WeightedConfig& config,
                                const ReparamField& z);

/// |omega(gen_contact(f), gen_reparam(Z))| - zero in the continuum because
/// the two group actions are symplectically orthogonal; discretely it decays
/// spectrally with the node count.
double check_orthogonality(const WeightedConfig& config, const ScalarField& f,
                           const ReparamField& z);

/// |omega(gen_contact(f), probe) + D_probe <momentum, f>| with the
/// directional derivative taken by central differences of moment_left_pair.
double check_moment_identity(const WeightedConfig& config, const ScalarField& f,
                             const ConfigTangent& probe, double fd_step = 1e-5);

/// Flow every node along the lifted contact field of f for flow_time.
WeightedConfig apply_contact_flow(const WeightedConfig& config,
                                  const ScalarField& f, double flow_time,
                                  double dt);

/// max_a |rho_a(after) - rho_a(before)| under the node-wise lifted flow of f:
/// the reparametrization momentum is invariant under the contact action.
double check_jr_invariance(const WeightedConfig& config, const ScalarField& f,
                           double flow_time, const IntegratorSpec& spec);

}  // namespace epcontact
