#include "epcontact/kernels.hpp"

#include <cmath>

#include "epcontact/errors.hpp"

namespace epcontact {

KernelSpec::KernelSpec(Family family, double sigma)
    : family_(family), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    fail(ErrorCode::InvalidKernel, "kernel sigma must be positive and finite");
  }
}

KernelSpec KernelSpec::parse(const std::string& family, double sigma) {
  if (family == "gaussian") return gaussian(sigma);
  if (family == "exp") return exponential_radial(sigma);
  fail(ErrorCode::SchemaError, "unknown kernel family '" + family + "'");
}

std::string KernelSpec::family_name() const {
  return family_ == Family::Gaussian ? "gaussian" : "exp";
}

double KernelSpec::profile_r2(double r2) const {
  switch (family_) {
    case Family::Gaussian:
      return std::exp(-0.5 * r2 / (sigma_ * sigma_));
    case Family::ExponentialRadial:
      return std::exp(-std::sqrt(r2) / sigma_);
  }
  return 0.0;
}

double KernelSpec::value_from_disp2(double r2) const { return profile_r2(r2); }

Vec KernelSpec::grad_from_disp(const Vec& d) const {
  double r2 = 0.0;
  for (int i = 0; i < d.size(); ++i) r2 += d[i] * d[i];
  switch (family_) {
    case Family::Gaussian:
      return Vec((-profile_r2(r2) / (sigma_ * sigma_)) * d);
    case Family::ExponentialRadial: {
      const double r = std::sqrt(r2);
      if (r == 0.0) return Vec::Zero(d.size());
      return Vec((-profile_r2(r2) / (r * sigma_)) * d);
    }
  }
  return Vec::Zero(d.size());
}

namespace {
double disp2_euclidean(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::DimensionMismatch, "kernel arguments have different sizes");
  }
  double r2 = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    r2 += d * d;
  }
  return r2;
}
}  // namespace

double KernelSpec::eval(const Vec& x, const Vec& y) const {
  return value_from_disp2(disp2_euclidean(x, y));
}

Vec KernelSpec::grad1(const Vec& x, const Vec& y) const {
  if (x.size() != y.size()) {
    fail(ErrorCode::DimensionMismatch, "kernel arguments have different sizes");
  }
  return grad_from_disp(Vec(x - y));
}

double KernelSpec::eval(const ContactModel& model, const Vec& x,
                        const Vec& y) const {
  return value_from_disp2(model.squared_distance(x, y));
}

Vec KernelSpec::grad1(const ContactModel& model, const Vec& x,
                      const Vec& y) const {
  return grad_from_disp(model.displacement(x, y));
}

Mat KernelSpec::hess1(const ContactModel& model, const Vec& x,
                      const Vec& y) const {
  if (family_ != Family::Gaussian) {
    fail(ErrorCode::InvalidArgument,
         "second derivatives only provided for the gaussian family");
  }
  const Vec d = model.displacement(x, y);
  const double s2 = sigma_ * sigma_;
  const double v = profile_r2(d.squaredNorm());
  Mat h = (v / (s2 * s2)) * (d * d.transpose());
  h -= (v / s2) * Mat::Identity(d.size(), d.size());
  return h;
}

}  // namespace epcontact
