#pragma once

#include <string>

#include "epcontact/contact.hpp"
#include "epcontact/numeric.hpp"

namespace epcontact {

/// Radial interaction kernel k(x, y) = profile(|x - y|).  Both families are
/// positive definite on R^d.  Evaluation goes through the squared distance,
/// computed once, so k(x, y) and k(y, x) are bitwise identical.
class KernelSpec {
 public:
  enum class Family { Gaussian, ExponentialRadial };

  KernelSpec(Family family, double sigma);
  static KernelSpec gaussian(double sigma) {
    return KernelSpec(Family::Gaussian, sigma);
  }
  static KernelSpec exponential_radial(double sigma) {
    return KernelSpec(Family::ExponentialRadial, sigma);
  }
  /// Accepts the config-file names: "gaussian" or "exp".
  static KernelSpec parse(const std::string& family, double sigma);

  Family family() const { return family_; }
  double sigma() const { return sigma_; }
  std::string family_name() const;

  /// Profile as a function of squared distance.
  double profile_r2(double r2) const;

  /// Plain Euclidean evaluation.
  double eval(const Vec& x, const Vec& y) const;
  /// Gradient in the first argument; zero on the diagonal for both families
  /// (for ExponentialRadial this is the pinned convention at the kink).
  Vec grad1(const Vec& x, const Vec& y) const;

  /// Chart-aware evaluation: distances use the model displacement, so angular
  /// coordinates are compared along the shorter arc.
  double eval(const ContactModel& model, const Vec& x, const Vec& y) const;
  Vec grad1(const ContactModel& model, const Vec& x, const Vec& y) const;

  /// Hessian in the first argument (Gaussian family only).
  bool has_hessian() const { return family_ == Family::Gaussian; }
  Mat hess1(const ContactModel& model, const Vec& x, const Vec& y) const;

 private:
  double value_from_disp2(double r2) const;
  Vec grad_from_disp(const Vec& d) const;

  Family family_;
  double sigma_;
};

}  // namespace epcontact
