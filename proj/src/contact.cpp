#include "epcontact/contact.hpp"

#include <cmath>
#include <numbers>

#include "epcontact/errors.hpp"

namespace epcontact {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(int dim, std::vector<Monomial> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim <= 0) fail(ErrorCode::InvalidArgument, "polynomial dim must be > 0");
  for (const auto& t : terms_) {
    if (t.exponents.size() != dim) {
      fail(ErrorCode::DimensionMismatch, "monomial exponent list has wrong size");
    }
    if ((t.exponents.array() < 0).any()) {
      fail(ErrorCode::InvalidArgument, "monomial exponents must be >= 0");
    }
  }
}

namespace {
double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}
}  // namespace

double Polynomial::value(const Vec& x) const {
  ExactSum acc;
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int i = 0; i < dim_; ++i) m *= int_pow(x[i], t.exponents[i]);
    acc.add(m);
  }
  return acc.value();
}

Vec Polynomial::gradient(const Vec& x) const {
  Vec g = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    ExactSum acc;
    for (const auto& t : terms_) {
      const int e = t.exponents[k];
      if (e == 0) continue;
      double m = t.coeff * e * int_pow(x[k], e - 1);
      for (int i = 0; i < dim_; ++i) {
        if (i != k) m *= int_pow(x[i], t.exponents[i]);
      }
      acc.add(m);
    }
    g[k] = acc.value();
  }
  return g;
}

Mat Polynomial::hessian(const Vec& x) const {
  Mat h = Mat::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int l = k; l < dim_; ++l) {
      ExactSum acc;
      for (const auto& t : terms_) {
        Eigen::VectorXi e = t.exponents;
        double c = t.coeff;
        c *= e[k];
        if (c == 0.0) continue;
        e[k] -= 1;
        c *= e[l];
        if (c == 0.0) continue;
        e[l] -= 1;
        double m = c;
        for (int i = 0; i < dim_; ++i) m *= int_pow(x[i], e[i]);
        acc.add(m);
      }
      h(k, l) = acc.value();
      h(l, k) = h(k, l);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// ScalarField constructors

ScalarField ScalarField::constant(int dim, double c) {
  ScalarField f;
  f.value = [c](const Vec&) { return c; };
  f.gradient = [dim](const Vec&) { return Vec::Zero(dim); };
  f.hessian = [dim](const Vec&) { return Mat::Zero(dim, dim); };
  return f;
}

ScalarField ScalarField::coordinate(int dim, int axis) {
  if (axis < 0 || axis >= dim) {
    fail(ErrorCode::InvalidArgument, "coordinate axis out of range");
  }
  ScalarField f;
  f.value = [axis](const Vec& x) { return x[axis]; };
  f.gradient = [dim, axis](const Vec&) {
    Vec g = Vec::Zero(dim);
    g[axis] = 1.0;
    return g;
  };
  f.hessian = [dim](const Vec&) { return Mat::Zero(dim, dim); };
  return f;
}

ScalarField ScalarField::polynomial(const Polynomial& p) {
  ScalarField f;
  f.value = [p](const Vec& x) { return p.value(x); };
  f.gradient = [p](const Vec& x) { return p.gradient(x); };
  f.hessian = [p](const Vec& x) { return p.hessian(x); };
  return f;
}

ScalarField ScalarField::gaussian_bump(const Vec& center, double width,
                                       double amplitude) {
  if (!(width > 0.0)) {
    fail(ErrorCode::InvalidArgument, "bump width must be positive");
  }
  const Vec c = center;
  const double w2 = width * width;
  ScalarField f;
  f.value = [c, w2, amplitude](const Vec& x) {
    const Vec d = x - c;
    return amplitude * std::exp(-0.5 * d.squaredNorm() / w2);
  };
  f.gradient = [c, w2, amplitude](const Vec& x) {
    const Vec d = x - c;
    const double v = amplitude * std::exp(-0.5 * d.squaredNorm() / w2);
    return Vec((-v / w2) * d);
  };
  f.hessian = [c, w2, amplitude](const Vec& x) {
    const Vec d = x - c;
    const double v = amplitude * std::exp(-0.5 * d.squaredNorm() / w2);
    Mat h = (v / (w2 * w2)) * (d * d.transpose());
    h -= (v / w2) * Mat::Identity(d.size(), d.size());
    return h;
  };
  return f;
}

ScalarField ScalarField::planar_trig(const Polynomial& p0, const Polynomial& p1,
                                     const Polynomial& p2) {
  if (p0.dim() != 2 || p1.dim() != 2 || p2.dim() != 2) {
    fail(ErrorCode::DimensionMismatch, "planar_trig expects bivariate parts");
  }
  ScalarField f;
  f.value = [p0, p1, p2](const Vec& x) {
    const Vec q = x.head(2);
    return p0.value(q) + std::cos(x[2]) * p1.value(q) +
           std::sin(x[2]) * p2.value(q);
  };
  f.gradient = [p0, p1, p2](const Vec& x) {
    const Vec q = x.head(2);
    const double ct = std::cos(x[2]), st = std::sin(x[2]);
    Vec g(3);
    g.head(2) = p0.gradient(q) + ct * p1.gradient(q) + st * p2.gradient(q);
    g[2] = -st * p1.value(q) + ct * p2.value(q);
    return g;
  };
  return f;
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  ScalarField h;
  h.value = [f, g](const Vec& x) { return f.value(x) + g.value(x); };
  h.gradient = [f, g](const Vec& x) { return Vec(f.gradient(x) + g.gradient(x)); };
  if (f.has_hessian() && g.has_hessian()) {
    h.hessian = [f, g](const Vec& x) { return Mat(f.hessian(x) + g.hessian(x)); };
  }
  return h;
}

ScalarField operator*(double c, const ScalarField& f) {
  ScalarField h;
  h.value = [c, f](const Vec& x) { return c * f.value(x); };
  h.gradient = [c, f](const Vec& x) { return Vec(c * f.gradient(x)); };
  if (f.has_hessian()) {
    h.hessian = [c, f](const Vec& x) { return Mat(c * f.hessian(x)); };
  }
  return h;
}

// ---------------------------------------------------------------------------
// ContactModel

ContactModel ContactModel::darboux(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "darboux model needs n >= 1");
  return ContactModel(Kind::Darboux, n);
}

ContactModel ContactModel::rotational3() {
  return ContactModel(Kind::Rotational3, 1);
}

ContactModel ContactModel::projectivized2() {
  return ContactModel(Kind::Projectivized2, 1);
}

ContactModel ContactModel::parse(const std::string& id) {
  if (id == "rotational3") return rotational3();
  if (id == "projectivized2") return projectivized2();
  if (id.rfind("darboux:", 0) == 0) {
    try {
      const int n = std::stoi(id.substr(8));
      if (n >= 1) return darboux(n);
    } catch (const std::exception&) {
    }
  }
  fail(ErrorCode::SchemaError, "unknown model id '" + id + "'");
}

int ContactModel::dim() const {
  switch (kind_) {
    case Kind::Darboux:
      return 2 * n_ + 1;
    case Kind::Rotational3:
    case Kind::Projectivized2:
      return 3;
  }
  return 0;
}

std::string ContactModel::id() const {
  switch (kind_) {
    case Kind::Darboux:
      return "darboux:" + std::to_string(n_);
    case Kind::Rotational3:
      return "rotational3";
    case Kind::Projectivized2:
      return "projectivized2";
  }
  return {};
}

std::vector<std::string> ContactModel::coordinate_names() const {
  switch (kind_) {
    case Kind::Darboux: {
      std::vector<std::string> names;
      if (n_ == 1) {
        names = {"x", "y", "z"};
      } else {
        for (int i = 1; i <= n_; ++i) names.push_back("x" + std::to_string(i));
        for (int i = 1; i <= n_; ++i) names.push_back("y" + std::to_string(i));
        names.push_back("z");
      }
      return names;
    }
    case Kind::Rotational3:
      return {"x", "y", "z"};
    case Kind::Projectivized2:
      return {"q1", "q2", "theta"};
  }
  return {};
}

int ContactModel::angular_axis() const {
  return kind_ == Kind::Projectivized2 ? 2 : -1;
}

void ContactModel::check_point(const Vec& x) const {
  if (x.size() != dim()) {
    fail(ErrorCode::DimensionMismatch,
         "point has size " + std::to_string(x.size()) + ", model '" + id() +
             "' has dimension " + std::to_string(dim()));
  }
}

Vec ContactModel::alpha_coeffs(const Vec& x) const {
  check_point(x);
  Vec a = Vec::Zero(dim());
  switch (kind_) {
    case Kind::Darboux:
      // alpha = dz - sum_i y_i dx_i
      for (int i = 0; i < n_; ++i) a[i] = -x[n_ + i];
      a[2 * n_] = 1.0;
      break;
    case Kind::Rotational3:
      // alpha = dz + x dy - y dx
      a[0] = -x[1];
      a[1] = x[0];
      a[2] = 1.0;
      break;
    case Kind::Projectivized2:
      // alpha = cos(theta) dq1 + sin(theta) dq2
      a[0] = std::cos(x[2]);
      a[1] = std::sin(x[2]);
      break;
  }
  return a;
}

double ContactModel::alpha_pair(const Vec& x, const Vec& v) const {
  check_point(x);
  if (v.size() != dim()) {
    fail(ErrorCode::DimensionMismatch, "tangent vector has wrong size");
  }
  return alpha_coeffs(x).dot(v);
}

Mat ContactModel::dalpha(const Vec& x) const {
  check_point(x);
  const int d = dim();
  Mat m = Mat::Zero(d, d);
  switch (kind_) {
    case Kind::Darboux:
      // d(alpha) = sum_i dx_i ^ dy_i
      for (int i = 0; i < n_; ++i) {
        m(i, n_ + i) = 1.0;
        m(n_ + i, i) = -1.0;
      }
      break;
    case Kind::Rotational3:
      // d(alpha) = 2 dx ^ dy
      m(0, 1) = 2.0;
      m(1, 0) = -2.0;
      break;
    case Kind::Projectivized2:
      // d(alpha) = -sin dtheta ^ dq1 + cos dtheta ^ dq2
      m(2, 0) = -std::sin(x[2]);
      m(0, 2) = std::sin(x[2]);
      m(2, 1) = std::cos(x[2]);
      m(1, 2) = -std::cos(x[2]);
      break;
  }
  return m;
}

Vec ContactModel::reeb(const Vec& x) const {
  check_point(x);
  const int d = dim();
  switch (kind_) {
    case Kind::Darboux:
    case Kind::Rotational3: {
      Vec e = Vec::Zero(d);
      e[d - 1] = 1.0;
      return e;
    }
    case Kind::Projectivized2: {
      // Solve alpha(E) = 1, i_E d(alpha) = 0 pointwise.
      Mat sys(d + 1, d);
      Vec rhs = Vec::Zero(d + 1);
      sys.row(0) = alpha_coeffs(x).transpose();
      sys.bottomRows(d) = dalpha(x).transpose();
      rhs[0] = 1.0;
      const Vec e = sys.colPivHouseholderQr().solve(rhs);
      if ((sys * e - rhs).norm() > 1e-10) {
        fail(ErrorCode::SingularSystem, "Reeb solve did not converge");
      }
      return e;
    }
  }
  return Vec::Zero(d);
}

Vec ContactModel::displacement(const Vec& x, const Vec& y) const {
  check_point(x);
  check_point(y);
  Vec d = x - y;
  const int ax = angular_axis();
  if (ax >= 0) {
    d[ax] = std::remainder(d[ax], 2.0 * std::numbers::pi);
  }
  return d;
}

double ContactModel::squared_distance(const Vec& x, const Vec& y) const {
  const Vec d = displacement(x, y);
  double r2 = 0.0;
  for (int i = 0; i < d.size(); ++i) r2 += d[i] * d[i];
  return r2;
}

double ContactModel::distance(const Vec& x, const Vec& y) const {
  return std::sqrt(squared_distance(x, y));
}

// ---------------------------------------------------------------------------
// Contact operations

Vec contact_vector_field_generic(const ContactModel& model,
                                 const ScalarField& f, const Vec& x) {
  const int d = model.dim();
  const Vec a = model.alpha_coeffs(x);
  const Mat da = model.dalpha(x);
  const Vec e = model.reeb(x);
  const double fx = f.value(x);
  const Vec gf = f.gradient(x);
  const double lambda = gf.dot(e);

  // Decompose X = f E + Y with alpha(Y) = 0; then i_Y d(alpha) must equal
  // beta = lambda alpha - df on a basis of ker alpha.
  int pivot = 0;
  for (int i = 1; i < d; ++i) {
    if (std::fabs(a[i]) > std::fabs(a[pivot])) pivot = i;
  }
  if (a[pivot] == 0.0) {
    fail(ErrorCode::SingularSystem, "contact form vanished at sample point");
  }
  Mat basis(d, d - 1);  // columns span ker alpha
  int col = 0;
  for (int i = 0; i < d; ++i) {
    if (i == pivot) continue;
    Vec b = Vec::Zero(d);
    b[i] = 1.0;
    b[pivot] = -a[i] / a[pivot];
    basis.col(col++) = b;
  }

  const Vec beta = lambda * a - gf;
  Mat sys(d - 1, d - 1);
  Vec rhs(d - 1);
  for (int k = 0; k < d - 1; ++k) {
    const Vec bk = basis.col(k);
    for (int i = 0; i < d - 1; ++i) {
      sys(k, i) = basis.col(i).dot(da * bk);  // d(alpha)(b_i, b_k)
    }
    rhs[k] = beta.dot(bk);
  }
  Eigen::FullPivLU<Mat> lu(sys);
  if (!lu.isInvertible()) {
    fail(ErrorCode::SingularSystem,
         "d(alpha) restricted to ker alpha is degenerate at sample point");
  }
  const Vec c = lu.solve(rhs);
  return Vec(fx * e + basis * c);
}

Vec contact_vector_field(const ContactModel& model, const ScalarField& f,
                         const Vec& x) {
  if (model.kind() == ContactModel::Kind::Darboux) {
    const int n = (model.dim() - 1) / 2;
    const double fx = f.value(x);
    const Vec g = f.gradient(x);
    const double fz = g[2 * n];
    Vec X(model.dim());
    double ydotfy = 0.0;
    for (int i = 0; i < n; ++i) {
      X[i] = -g[n + i];                  // -f_{y_i}
      X[n + i] = x[n + i] * fz + g[i];   // y_i f_z + f_{x_i}
      ydotfy += x[n + i] * g[n + i];
    }
    X[2 * n] = fx - ydotfy;
    return X;
  }
  return contact_vector_field_generic(model, f, x);
}

double conformal_factor(const ContactModel& model, const ScalarField& f,
                        const Vec& x) {
  return f.gradient(x).dot(model.reeb(x));
}

std::pair<Vec, double> lifted_generator(const ContactModel& model,
                                        const ScalarField& f, const Vec& x,
                                        double t) {
  return {contact_vector_field(model, f, x),
          -t * conformal_factor(model, f, x)};
}

Mat symplectization_omega(const ContactModel& model, const Vec& x, double t) {
  const int d = model.dim();
  const Vec a = model.alpha_coeffs(x);
  Mat w = Mat::Zero(d + 1, d + 1);
  w.topLeftCorner(d, d) = t * model.dalpha(x);
  // dt ^ alpha part: omega(d/dt, v) = alpha(v).
  w.row(d).head(d) = a.transpose();
  w.col(d).head(d) = -a;
  return w;
}

// ---------------------------------------------------------------------------

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::InvalidArgument:
      return "invalid-argument";
    case ErrorCode::InvalidKernel:
      return "invalid-kernel";
    case ErrorCode::InvalidWeight:
      return "invalid-weight";
    case ErrorCode::DegenerateEmbedding:
      return "degenerate-embedding";
    case ErrorCode::SingularSystem:
      return "singular-system";
    case ErrorCode::SchemaError:
      return "schema-error";
    case ErrorCode::UnknownSuite:
      return "unknown-suite";
    case ErrorCode::IoError:
      return "io-error";
  }
  return "unknown";
}

}  // namespace epcontact
