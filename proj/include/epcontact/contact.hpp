#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "epcontact/numeric.hpp"

namespace epcontact {

/// One monomial c * prod_i x_i^{e_i} of a multivariate polynomial.
struct Monomial {
  double coeff = 0.0;
  Eigen::VectorXi exponents;
};

/// Multivariate polynomial with closed-form derivatives.
class Polynomial {
 public:
  Polynomial(int dim, std::vector<Monomial> terms);

  int dim() const { return dim_; }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;

 private:
  int dim_;
  std::vector<Monomial> terms_;
};

/// Smooth scalar function on a model chart: value, gradient, and (when the
/// underlying construction provides one) second derivatives.
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;  // empty when unavailable

  bool has_hessian() const { return static_cast<bool>(hessian); }

  static ScalarField constant(int dim, double c);
  static ScalarField coordinate(int dim, int axis);
  static ScalarField polynomial(const Polynomial& p);
  static ScalarField gaussian_bump(const Vec& center, double width,
                                   double amplitude);
  /// f(q1, q2, theta) = p0(q) + cos(theta) p1(q) + sin(theta) p2(q) on a
  /// three-coordinate chart whose last coordinate is an angle.
  static ScalarField planar_trig(const Polynomial& p0, const Polynomial& p1,
                                 const Polynomial& p2);
};

ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField operator*(double c, const ScalarField& f);

/// Exemplar contact manifolds, each presented in a single global chart with
/// an explicit contact form.
///
///   darboux:n       R^{2n+1}, coords (x_1..x_n, y_1..y_n, z),
///                   alpha = dz - sum_i y_i dx_i
///   rotational3     R^3, alpha = dz + x dy - y dx
///   projectivized2  R^2 x (R / 2 pi Z), coords (q1, q2, theta),
///                   alpha = cos(theta) dq1 + sin(theta) dq2,
///                   fiber identification (theta + pi, t) ~ (theta, -t)
class ContactModel {
 public:
  enum class Kind { Darboux, Rotational3, Projectivized2 };

  static ContactModel darboux(int n);
  static ContactModel rotational3();
  static ContactModel projectivized2();
  /// Parse a model id string: "darboux:<n>", "rotational3", "projectivized2".
  static ContactModel parse(const std::string& id);

  Kind kind() const { return kind_; }
  int dim() const;
  std::string id() const;
  std::vector<std::string> coordinate_names() const;

  /// Index of the angle-valued coordinate, or -1 for none.
  int angular_axis() const;

  /// Coefficient vector a(x) with alpha_x(v) = a . v.
  Vec alpha_coeffs(const Vec& x) const;
  double alpha_pair(const Vec& x, const Vec& v) const;

  /// Matrix D(x) of the exterior derivative, d(alpha)_x(u, v) = u^T D v.
  Mat dalpha(const Vec& x) const;

  /// Reeb field: alpha(E) = 1, i_E d(alpha) = 0.  Closed form where one
  /// exists; otherwise a pointwise linear solve.
  Vec reeb(const Vec& x) const;

  /// Chart difference x - y with angle coordinates wrapped to (-pi, pi].
  Vec displacement(const Vec& x, const Vec& y) const;
  double squared_distance(const Vec& x, const Vec& y) const;
  double distance(const Vec& x, const Vec& y) const;

 private:
  ContactModel(Kind k, int n) : kind_(k), n_(n) {}
  void check_point(const Vec& x) const;

  Kind kind_;
  int n_;  // Darboux parameter; dim = 2n+1
};

/// Infinitesimal contact transformation X_f with alpha(X_f) = f and
/// i_{X_f} d(alpha) = (E.f) alpha - df.  Closed form on Darboux charts,
/// pointwise dense solve elsewhere.
Vec contact_vector_field(const ContactModel& model, const ScalarField& f,
                         const Vec& x);

/// The dense-solve path (decompose X = f E + Y with Y in ker alpha); exposed
/// separately so the closed forms can be cross-checked against it.
Vec contact_vector_field_generic(const ContactModel& model,
                                 const ScalarField& f, const Vec& x);

/// Conformal rate lambda_f = E.f, i.e. L_{X_f} alpha = lambda_f alpha.
double conformal_factor(const ContactModel& model, const ScalarField& f,
                        const Vec& x);

/// Generator of the lifted flow on the trivialized symplectization
/// P x R^x with canonical 1-form t*alpha: (X_f(x), -t lambda_f(x)).
/// The fiber velocity sign is pinned by d/dt (t alpha) = 0 along the lift;
/// the Hamiltonian-oracle and moment-identity suites both certify it.
std::pair<Vec, double> lifted_generator(const ContactModel& model,
                                        const ScalarField& f, const Vec& x,
                                        double t);

/// Coordinate matrix of the symplectization form d(t*alpha) at (x, t),
/// size (dim+1) x (dim+1), fiber coordinate last.  Invertible iff t != 0.
Mat symplectization_omega(const ContactModel& model, const Vec& x, double t);

}  // namespace epcontact
