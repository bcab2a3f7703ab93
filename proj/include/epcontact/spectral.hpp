#pragma once

#include "epcontact/numeric.hpp"

namespace epcontact {

/// Dense trigonometric differentiation and interpolation on the uniform
/// periodic grid s_j = 2*pi*j/n.  For data sampled from an analytic
/// 2*pi-periodic function the derivative converges spectrally (it is exact,
/// up to roundoff, for trigonometric polynomials of degree < n/2).

/// Stencil weights w[m], m = 1..n-1, such that (Df)_j = sum_m w[m] f_{j-m}.
/// The table is built antisymmetric (w[n-m] = -w[m] bitwise) so that the
/// derivative of constant samples is exactly zero and the operation commutes
/// exactly with cyclic relabeling.
std::vector<double> periodic_diff_weights(int n);

/// Derivative samples of one periodic coordinate.
Vec periodic_derivative(const Vec& samples);

/// Derivative of an angle-valued coordinate: the samples are unwrapped and a
/// possible integer winding around the period is handled separately, so loops
/// that wind in the angular direction differentiate correctly.
Vec periodic_derivative_angular(const Vec& samples);

/// Number of full 2*pi turns the angular samples make around the loop.
int angular_winding(const Vec& samples);

/// Band-limited (trigonometric) interpolation of periodic samples evaluated
/// at arbitrary parameter values.
Vec trig_interpolate(const Vec& samples, const Vec& eval_at);

/// Same, for an angle-valued coordinate (unwraps and re-adds the winding).
Vec trig_interpolate_angular(const Vec& samples, const Vec& eval_at);

}  // namespace epcontact
