#include "epcontact/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "epcontact/config.hpp"
#include "epcontact/contact.hpp"
#include "epcontact/dynamics.hpp"
#include "epcontact/epdiff.hpp"
#include "epcontact/errors.hpp"
#include "epcontact/kernels.hpp"
#include "epcontact/verify.hpp"

#include <json.hpp>

namespace epcontact {
namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Deterministic case generation
// ---------------------------------------------------------------------------

struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen);
  }

  int integer(int lo, int hi) {  // inclusive bounds
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
  }

  double signed_magnitude(double lo, double hi) {
    double mag = uniform(lo, hi);
    return integer(0, 1) == 0 ? mag : -mag;
  }
};

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
  // Stable per-suite stream: FNV-1a over the suite name folded into the seed.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

Polynomial random_polynomial(Rng& rng, int dim, int max_degree,
                             double coeff_scale) {
  int terms = rng.integer(4, 7);
  std::vector<Monomial> monomials;
  monomials.reserve(static_cast<std::size_t>(terms));
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    m.coeff = rng.uniform(-coeff_scale, coeff_scale);
    m.exponents = Eigen::VectorXi::Zero(dim);
    int degree = rng.integer(0, max_degree);
    for (int d = 0; d < degree; ++d) {
      m.exponents[rng.integer(0, dim - 1)] += 1;
    }
    monomials.push_back(std::move(m));
  }
  return Polynomial(dim, monomials);
}

ScalarField random_field(Rng& rng, const ContactModel& model, int max_degree,
                         double coeff_scale) {
  if (model.kind() == ContactModel::Kind::Projectivized2) {
    Polynomial p0 = random_polynomial(rng, 2, max_degree, coeff_scale);
    Polynomial p1 = random_polynomial(rng, 2, max_degree, coeff_scale);
    Polynomial p2 = random_polynomial(rng, 2, max_degree, coeff_scale);
    return ScalarField::planar_trig(p0, p1, p2);
  }
  return ScalarField::polynomial(
      random_polynomial(rng, model.dim(), max_degree, coeff_scale));
}

Vec random_point(Rng& rng, const ContactModel& model, double box) {
  Vec x(model.dim());
  for (int i = 0; i < model.dim(); ++i) {
    x[i] = rng.uniform(-box, box);
  }
  if (model.angular_axis() >= 0) {
    x[model.angular_axis()] = rng.uniform(0.0, 2.0 * kPi);
  }
  return x;
}

Vec random_direction(Rng& rng, int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = rng.uniform(-1.0, 1.0);
  }
  return v;
}

// Point cloud with a minimum pairwise separation, by deterministic rejection.
Mat random_cloud(Rng& rng, const ContactModel& model, int n, double box,
                 double min_sep) {
  Mat pos(n, model.dim());
  for (int a = 0; a < n; ++a) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Vec x = random_point(rng, model, box);
      bool ok = true;
      for (int b = 0; b < a; ++b) {
        if (model.distance(pos.row(b).transpose(), x) < min_sep) {
          ok = false;
          break;
        }
      }
      if (ok || attempt == 999) {
        pos.row(a) = x.transpose();
        break;
      }
    }
  }
  return pos;
}

Vec random_weights(Rng& rng, int n, double lo, double hi) {
  Vec h(n);
  for (int a = 0; a < n; ++a) {
    h[a] = rng.signed_magnitude(lo, hi);
  }
  return h;
}

// Analytic closed curve with weight profile, sampled at any resolution.
struct AnalyticLoop {
  std::function<Vec(double)> position;
  std::function<double(double)> weight;

  WeightedConfig sample(const ContactModel& model, int n) const {
    Mat pos(n, model.dim());
    Vec h(n);
    for (int a = 0; a < n; ++a) {
      double s = 2.0 * kPi * a / n;
      pos.row(a) = position(s).transpose();
      h[a] = weight(s);
    }
    return WeightedConfig(model, Topology::loop(n), pos, h);
  }
};

// Smooth perturbed circle in the three-dimensional standard model.  The
// perturbation amplitudes keep the curve embedded with comfortable margin.
AnalyticLoop random_loop3(Rng& rng) {
  double r0 = rng.uniform(0.85, 1.2);
  std::array<double, 2> ax{}, bx{}, ay{}, by{};
  for (int k = 0; k < 2; ++k) {
    ax[k] = rng.uniform(-0.1, 0.1);
    bx[k] = rng.uniform(-0.1, 0.1);
    ay[k] = rng.uniform(-0.1, 0.1);
    by[k] = rng.uniform(-0.1, 0.1);
  }
  std::array<double, 3> cz{}, dz{};
  for (int k = 0; k < 3; ++k) {
    cz[k] = rng.uniform(-0.2, 0.2);
    dz[k] = rng.uniform(-0.2, 0.2);
  }
  double w0 = rng.uniform(0.9, 1.3);
  double w1 = rng.uniform(-0.25, 0.25);
  double w2 = rng.uniform(-0.2, 0.2);
  double phase = rng.uniform(0.0, 2.0 * kPi);

  AnalyticLoop loop;
  loop.position = [=](double s) {
    Vec p(3);
    p[0] = r0 * std::cos(s);
    p[1] = r0 * std::sin(s);
    p[2] = 0.0;
    for (int k = 0; k < 2; ++k) {
      double m = k + 2.0;
      p[0] += ax[k] * std::cos(m * s) + bx[k] * std::sin(m * s);
      p[1] += ay[k] * std::cos(m * s) + by[k] * std::sin(m * s);
    }
    for (int k = 0; k < 3; ++k) {
      double m = k + 1.0;
      p[2] += cz[k] * std::cos(m * s) + dz[k] * std::sin(m * s);
    }
    return p;
  };
  loop.weight = [=](double s) {
    return w0 + w1 * std::sin(s + phase) + w2 * std::cos(2.0 * s + phase);
  };
  return loop;
}

// f(x) = amplitude / (offset - direction . x): smooth on the sampled region
// (direction . x < offset) with a pole just outside it, so f along an
// analytic loop has a finite strip of analyticity and the spectral residuals
// decay at a measurable, tunable rate instead of sitting at roundoff.
ScalarField rational_field(const Vec& direction, double offset,
                           double amplitude) {
  ScalarField f;
  Vec u = direction;
  f.value = [u, offset, amplitude](const Vec& x) {
    return amplitude / (offset - u.dot(x));
  };
  f.gradient = [u, offset, amplitude](const Vec& x) {
    double d = offset - u.dot(x);
    return Vec(amplitude / (d * d) * u);
  };
  f.hessian = [u, offset, amplitude](const Vec& x) {
    double d = offset - u.dot(x);
    return Mat(2.0 * amplitude / (d * d * d) * u * u.transpose());
  };
  return f;
}

ReparamField random_reparam(Rng& rng) {
  ReparamField z;
  z.constant = rng.uniform(-0.5, 0.5);
  z.cos_coeffs = (Vec(3) << rng.uniform(-0.6, 0.6), rng.uniform(-0.4, 0.4),
                  rng.uniform(-0.3, 0.3))
                     .finished();
  z.sin_coeffs = (Vec(3) << rng.uniform(-0.6, 0.6), rng.uniform(-0.4, 0.4),
                  rng.uniform(-0.3, 0.3))
                     .finished();
  return z;
}

void push_case(SuiteResult& out, const std::string& name, double residual,
               double tolerance) {
  SuiteCase c;
  c.name = name;
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  out.cases.push_back(std::move(c));
}

// ---------------------------------------------------------------------------
// Suite bodies
// ---------------------------------------------------------------------------

SuiteResult suite_contact_identities(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "contact-identities";
  Rng rng(seed);

  const std::vector<ContactModel> models = {
      ContactModel::darboux(1), ContactModel::darboux(2),
      ContactModel::rotational3(), ContactModel::projectivized2()};

  for (int i = 0; i < 100; ++i) {
    const ContactModel& model = models[static_cast<std::size_t>(i % 4)];
    ScalarField f = random_field(rng, model, 3, 0.8);
    Vec x = random_point(rng, model, 1.4);
    Vec v = random_direction(rng, model.dim());

    Vec xf = contact_vector_field(model, f, x);
    double along_form = std::abs(model.alpha_pair(x, xf) - f.value(x));
    push_case(out, "alpha-of-field-" + std::to_string(i), along_form, 1e-10);

    double lie = lie_derivative_residual(model, f, x, v);
    push_case(out, "flow-product-rule-" + std::to_string(i),
              lie / (1.0 + v.norm()), 1e-6);

    Vec reeb = model.reeb(x);
    double reeb_pair = std::abs(model.alpha_pair(x, reeb) - 1.0);
    double reeb_interior = std::abs(v.dot(model.dalpha(x) * reeb));
    push_case(out, "reeb-normalization-" + std::to_string(i),
              std::max(reeb_pair, reeb_interior), 1e-10);

    if (model.kind() == ContactModel::Kind::Darboux) {
      Vec generic = contact_vector_field_generic(model, f, x);
      push_case(out, "closed-form-vs-solver-" + std::to_string(i),
                (xf - generic).lpNorm<Eigen::Infinity>(), 1e-12);
    }
  }
  return out;
}

SuiteResult suite_dualpair_orthogonality(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "dualpair-orthogonality";
  Rng rng(seed);
  ContactModel model = ContactModel::darboux(1);

  for (int i = 0; i < 50; ++i) {
    AnalyticLoop loop = random_loop3(rng);
    ScalarField f;
    if (i % 3 == 0) {
      f = random_field(rng, model, 2, 0.7);
    } else if (i % 3 == 1) {
      Vec center(3);
      center[0] = rng.uniform(-1.1, 1.1);
      center[1] = rng.uniform(-1.1, 1.1);
      center[2] = rng.uniform(-0.5, 0.5);
      f = ScalarField::gaussian_bump(center, rng.uniform(0.7, 1.0),
                                     rng.uniform(0.5, 1.5));
    } else {
      // A pole close to the loop: the coarse-grid residual is well above
      // roundoff, so this arm exercises the genuine spectral decay.
      Vec u = random_direction(rng, 3);
      u /= u.norm();
      double reach = 0.0;
      for (int k = 0; k < 1024; ++k) {
        reach = std::max(reach, u.dot(loop.position(2.0 * kPi * k / 1024)));
      }
      f = rational_field(u, reach + rng.uniform(0.06, 0.12),
                         rng.uniform(0.5, 1.5));
    }
    ReparamField z = random_reparam(rng);

    WeightedConfig coarse = loop.sample(model, 64);
    WeightedConfig fine = loop.sample(model, 256);
    double res_coarse = check_orthogonality(coarse, f, z);
    double res_fine = check_orthogonality(fine, f, z);

    push_case(out, "pairing-fine-" + std::to_string(i), res_fine, 1e-8);
    // The fine-grid value must either sit at the roundoff floor or improve on
    // the coarse grid by at least two orders of magnitude.
    double decay_gate = std::max(res_coarse / 100.0, 1e-13);
    push_case(out, "pairing-decay-" + std::to_string(i), res_fine, decay_gate);
  }
  return out;
}

SuiteResult suite_moment_identity(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "moment-identity";
  Rng rng(seed);

  for (int i = 0; i < 50; ++i) {
    ContactModel model = (i % 3 == 1) ? ContactModel::rotational3()
                                      : ContactModel::darboux(1);
    WeightedConfig config = [&] {
      if (i % 3 == 2) {
        AnalyticLoop loop = random_loop3(rng);
        return loop.sample(model, 32);
      }
      int n = rng.integer(2, 5);
      Mat pos = random_cloud(rng, model, n, 1.2, 0.3);
      Vec h = random_weights(rng, n, 0.5, 2.0);
      return WeightedConfig(model, Topology::points(n), pos, h);
    }();

    ScalarField f = random_field(rng, model, 3, 0.7);
    ConfigTangent probe;
    probe.dx = Mat(config.size(), model.dim());
    for (int a = 0; a < config.size(); ++a) {
      probe.dx.row(a) = random_direction(rng, model.dim()).transpose();
    }
    probe.dh = random_direction(rng, config.size());

    double res = check_moment_identity(config, f, probe, 1e-5);
    push_case(out, "pairing-vs-derivative-" + std::to_string(i), res, 1e-7);
  }
  return out;
}

SuiteResult suite_jr_invariance(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "jr-invariance";
  Rng rng(seed);
  ContactModel d1 = ContactModel::darboux(1);
  IntegratorSpec spec;
  spec.dt = 1e-3;

  // Case 1: the zero field flows nothing, so the profile is bitwise constant.
  {
    AnalyticLoop loop = random_loop3(rng);
    WeightedConfig config = loop.sample(d1, 64);
    double res =
        check_jr_invariance(config, ScalarField::constant(3, 0.0), 0.5, spec);
    push_case(out, "zero-field", res, 1e-15);
  }

  // Case 2: the constant field 1 generates the Reeb translation.  Every node
  // shifts by the same amount, but the per-node rounding of z + c is not
  // uniform, and the differentiation stencil amplifies that last-bit jitter;
  // the bound is the stencil norm times machine epsilon.
  {
    AnalyticLoop loop = random_loop3(rng);
    WeightedConfig config = loop.sample(d1, 64);
    double res =
        check_jr_invariance(config, ScalarField::constant(3, 1.0), 0.5, spec);
    push_case(out, "reeb-translation", res, 1e-12);
  }

  // Cases 3..8: polynomial generators on perturbed loops.
  for (int i = 0; i < 6; ++i) {
    ContactModel model = (i % 3 == 1) ? ContactModel::rotational3() : d1;
    AnalyticLoop loop = random_loop3(rng);
    WeightedConfig config = loop.sample(model, 64);
    ScalarField f = random_field(rng, model, 2, 0.45);
    double res = check_jr_invariance(config, f, 0.25, spec);
    push_case(out, "generic-flow-" + std::to_string(i), res, 1e-8);
  }

  // Case 9: winding loop in the projectivized model.
  {
    double qr = rng.uniform(0.9, 1.1);
    AnalyticLoop loop;
    loop.position = [qr](double s) {
      Vec p(3);
      p[0] = qr * std::cos(s);
      p[1] = qr * std::sin(s);
      p[2] = s + 0.2 * std::sin(s);
      return p;
    };
    loop.weight = [](double s) { return 1.0 + 0.3 * std::cos(s); };
    ContactModel model = ContactModel::projectivized2();
    WeightedConfig config = loop.sample(model, 64);
    ScalarField f = random_field(rng, model, 2, 0.3);
    double res = check_jr_invariance(config, f, 0.2, spec);
    push_case(out, "winding-loop", res, 1e-8);
  }
  return out;
}

SuiteResult suite_oracle_equivalence(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "oracle-equivalence";
  Rng rng(seed);

  const std::vector<ContactModel> models = {
      ContactModel::darboux(1), ContactModel::darboux(1),
      ContactModel::rotational3(), ContactModel::darboux(2)};

  for (int i = 0; i < 50; ++i) {
    const ContactModel& model = models[static_cast<std::size_t>(i % 4)];
    bool gaussian = (i % 2 == 0);
    KernelSpec kernel =
        gaussian
            ? KernelSpec(KernelSpec::Family::Gaussian, rng.uniform(0.8, 1.25))
            : KernelSpec(KernelSpec::Family::ExponentialRadial,
                         rng.uniform(0.9, 1.3));
    // The exponential kernel needs wider spacing to keep the finite
    // differences of the oracle in their asymptotic regime.
    double min_sep = gaussian ? 0.35 : 0.55;
    int n = 2 + (i % 5);
    Mat pos = random_cloud(rng, model, n, 1.2, min_sep);
    Vec h = random_weights(rng, n, 0.5, 2.0);
    WeightedConfig config(model, Topology::points(n), pos, h);

    ConfigTangent direct = rhs(config, kernel);
    ConfigTangent oracle = oracle_rhs(config, kernel, 1e-5);

    double num = 0.0;
    double den = 1.0;
    num = std::max(num, (direct.dx - oracle.dx).lpNorm<Eigen::Infinity>());
    num = std::max(num, (direct.dh - oracle.dh).lpNorm<Eigen::Infinity>());
    den = std::max(den, oracle.dx.lpNorm<Eigen::Infinity>());
    den = std::max(den, oracle.dh.lpNorm<Eigen::Infinity>());
    push_case(out, "field-vs-variational-" + std::to_string(i), num / den,
              1e-8);
  }
  return out;
}

SuiteResult suite_epdiff_diagram(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "epdiff-diagram";
  Rng rng(seed);
  ContactModel model = ContactModel::projectivized2();

  for (int i = 0; i < 50; ++i) {
    WeightedConfig config = [&] {
      if (i % 4 == 3) {
        double qr = rng.uniform(0.8, 1.2);
        double amp = rng.uniform(0.05, 0.2);
        AnalyticLoop loop;
        loop.position = [qr, amp](double s) {
          Vec p(3);
          p[0] = qr * std::cos(s) + amp * std::cos(2.0 * s);
          p[1] = qr * std::sin(s) + amp * std::sin(3.0 * s);
          p[2] = s + amp * std::sin(s);
          return p;
        };
        double w0 = rng.uniform(0.8, 1.2);
        double w1 = rng.uniform(-0.3, 0.3);
        loop.weight = [w0, w1](double s) { return w0 + w1 * std::cos(s); };
        return loop.sample(model, 8 + (i % 9));
      }
      int n = 2 + (i % 7);
      Mat pos = random_cloud(rng, model, n, 1.0, 0.25);
      Vec h = random_weights(rng, n, 0.5, 2.0);
      return WeightedConfig(model, Topology::points(n), pos, h);
    }();

    PlanarField y = PlanarField::polynomial(random_polynomial(rng, 2, 3, 1.0),
                                            random_polynomial(rng, 2, 3, 1.0));
    double res = check_diagram(config, y);
    push_case(out, "momentum-match-" + std::to_string(i), res, 1e-12);
  }
  return out;
}

SuiteResult suite_theta_pullback(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "theta-pullback";
  Rng rng(seed);

  for (int i = 0; i < 50; ++i) {
    Eigen::Vector2d q(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    double theta = rng.uniform(0.0, 2.0 * kPi);
    double t = rng.signed_magnitude(0.3, 2.5);
    Eigen::Vector4d v;
    for (int k = 0; k < 4; ++k) {
      v[k] = rng.uniform(-1.0, 1.0);
    }
    double res = check_theta_pullback(q, theta, t, v, 1e-6);
    push_case(out, "canonical-form-" + std::to_string(i), res, 1e-6);
  }
  return out;
}

SuiteResult suite_convergence_order(std::uint64_t seed) {
  SuiteResult out;
  out.suite = "convergence-order";
  (void)seed;  // fixed canonical cases; the data is pinned for comparability
  ContactModel d1 = ContactModel::darboux(1);

  // Case 1: the annihilation pairing under refinement.  The scalar field has
  // a pole at x = 1.1, just outside the unit circle, so its restriction to
  // the loop has a finite strip of analyticity: the pairing error is visible
  // at low resolution and must fall spectrally.
  {
    AnalyticLoop loop;
    loop.position = [](double s) {
      Vec p(3);
      p[0] = std::cos(s);
      p[1] = std::sin(s);
      p[2] = 0.0;
      return p;
    };
    loop.weight = [](double s) { return std::exp(0.4 * std::sin(s)); };
    Vec axis(3);
    axis << 1.0, 0.0, 0.0;
    ScalarField f = rational_field(axis, 1.1, 1.0);
    ReparamField z;
    z.constant = 0.2;
    z.cos_coeffs = (Vec(3) << 0.5, 0.2, 0.0).finished();
    z.sin_coeffs = (Vec(3) << 0.4, 0.0, 0.1).finished();

    double r64 = check_orthogonality(loop.sample(d1, 64), f, z);
    double r128 = check_orthogonality(loop.sample(d1, 128), f, z);
    double r256 = check_orthogonality(loop.sample(d1, 256), f, z);
    push_case(out, "pairing-halving-1", r128, std::max(r64 / 100.0, 5e-14));
    push_case(out, "pairing-halving-2", r256, std::max(r128 / 100.0, 5e-14));
    push_case(out, "pairing-finest", r256, 1e-8);
  }

  // Case 2: the pairing-vs-derivative residual must shrink quadratically in
  // the finite-difference step.
  {
    Mat pos(2, 3);
    pos << 0.3, -0.2, 0.5, -0.4, 0.6, -0.1;
    Vec h(2);
    h << 1.2, -0.8;
    WeightedConfig config(d1, Topology::points(2), pos, h);
    auto exps = [](int a, int b, int c) {
      return Eigen::VectorXi(Eigen::Vector3i(a, b, c));
    };
    Polynomial poly(3, {Monomial{0.7, exps(1, 0, 1)},
                        Monomial{-0.4, exps(0, 2, 0)},
                        Monomial{0.5, exps(0, 0, 1)},
                        Monomial{0.3, exps(1, 1, 0)}});
    ScalarField f = ScalarField::polynomial(poly);
    ConfigTangent probe;
    probe.dx = Mat(2, 3);
    probe.dx << 0.4, -0.7, 0.2, 0.1, 0.5, -0.3;
    probe.dh = Vec(2);
    probe.dh << 0.6, -0.2;

    const std::array<double, 3> steps = {3e-3, 1e-3, 3e-4};
    std::array<double, 3> res{};
    for (std::size_t k = 0; k < steps.size(); ++k) {
      res[k] = check_moment_identity(config, f, probe, steps[k]);
    }
    // Least-squares slope of log(residual) against log(step).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      double lx = std::log(steps[k]);
      double ly = std::log(std::max(res[k], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    double npts = static_cast<double>(steps.size());
    double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    push_case(out, "derivative-step-order", std::abs(slope - 2.0), 0.35);
  }

  // Case 3: the transversality profile of a loop whose geometry has a finite
  // strip of analyticity; the node-wise profile must converge spectrally
  // under mesh doubling (coarse nodes are a bitwise subset of fine nodes).
  {
    AnalyticLoop loop;
    loop.position = [](double s) {
      double r = 0.3 / (1.0 - 0.82 * std::cos(s));
      Vec p(3);
      p[0] = r * std::cos(s);
      p[1] = r * std::sin(s);
      p[2] = 0.2 / (1.0 - 0.5 * std::cos(s + 1.0));
      return p;
    };
    loop.weight = [](double s) { return 1.0 / (1.0 - 0.6 * std::cos(s + 0.5)); };

    auto rho_at = [&](int n) { return moment_right(loop.sample(d1, n)); };
    Vec r32 = rho_at(32);
    Vec r64 = rho_at(64);
    Vec r128 = rho_at(128);
    double e1 = 0.0;
    for (int j = 0; j < 32; ++j) {
      e1 = std::max(e1, std::abs(r32[j] - r64[2 * j]));
    }
    double e2 = 0.0;
    for (int j = 0; j < 64; ++j) {
      e2 = std::max(e2, std::abs(r64[j] - r128[2 * j]));
    }
    push_case(out, "profile-halving", e2, std::max(e1 / 100.0, 1e-13));
    push_case(out, "profile-finest", e2, 1e-6);
  }
  return out;
}

}  // namespace

double lie_derivative_residual(const ContactModel& model, const ScalarField& f,
                               const Vec& x, const Vec& v, double flow_step,
                               double tangent_step) {
  double scale = 1.0 + x.lpNorm<Eigen::Infinity>();
  double eps = flow_step * scale;
  double delta = tangent_step * scale;

  auto field = [&](const Vec& y) { return contact_vector_field(model, f, y); };
  auto flow = [&](const Vec& y, double time) {
    return rk4_step(y, time, field);
  };
  // alpha evaluated on the pushforward of v along the time-eps flow.
  auto pairing_after = [&](double time) {
    Vec plus = flow(x + delta * v, time);
    Vec minus = flow(x - delta * v, time);
    Vec pushed = (plus - minus) / (2.0 * delta);
    Vec base = flow(x, time);
    return model.alpha_pair(base, pushed);
  };

  double derivative =
      (pairing_after(eps) - pairing_after(-eps)) / (2.0 * eps);
  double expected = conformal_factor(model, f, x) * model.alpha_pair(x, v);
  return std::abs(derivative - expected);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "contact-identities", "dualpair-orthogonality", "moment-identity",
      "jr-invariance",      "oracle-equivalence",     "epdiff-diagram",
      "theta-pullback",     "convergence-order"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  std::uint64_t s = suite_seed(seed, name);
  SuiteResult result;
  if (name == "contact-identities") {
    result = suite_contact_identities(s);
  } else if (name == "dualpair-orthogonality") {
    result = suite_dualpair_orthogonality(s);
  } else if (name == "moment-identity") {
    result = suite_moment_identity(s);
  } else if (name == "jr-invariance") {
    result = suite_jr_invariance(s);
  } else if (name == "oracle-equivalence") {
    result = suite_oracle_equivalence(s);
  } else if (name == "epdiff-diagram") {
    result = suite_epdiff_diagram(s);
  } else if (name == "theta-pullback") {
    result = suite_theta_pullback(s);
  } else if (name == "convergence-order") {
    result = suite_convergence_order(s);
  } else {
    fail(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
  }

  result.pass = true;
  result.max_residual = 0.0;
  for (const SuiteCase& c : result.cases) {
    result.pass = result.pass && c.pass;
    if (std::isfinite(c.residual)) {
      result.max_residual = std::max(result.max_residual, c.residual);
    } else {
      result.max_residual = std::numeric_limits<double>::infinity();
    }
  }
  return result;
}

std::vector<std::string> resolve_suite_names(
    const std::vector<std::string>& requested) {
  bool all = false;
  for (const std::string& r : requested) {
    if (r == "all") {
      all = true;
    } else if (std::find(suite_names().begin(), suite_names().end(), r) ==
               suite_names().end()) {
      fail(ErrorCode::UnknownSuite, "unknown suite '" + r + "'");
    }
  }
  if (all) {
    return suite_names();
  }
  std::vector<std::string> resolved;
  for (const std::string& r : requested) {
    if (std::find(resolved.begin(), resolved.end(), r) == resolved.end()) {
      resolved.push_back(r);
    }
  }
  return resolved;
}

std::string report_to_json(const std::vector<SuiteResult>& results,
                           std::uint64_t seed) {
  nlohmann::ordered_json report;
  report["seed"] = seed;
  bool all_pass = true;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const SuiteResult& r : results) {
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["pass"] = r.pass;
    s["maxResidual"] = r.max_residual;
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const SuiteCase& c : r.cases) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["residual"] = c.residual;
      cj["tolerance"] = c.tolerance;
      cj["pass"] = c.pass;
      cases.push_back(std::move(cj));
    }
    s["cases"] = std::move(cases);
    suites.push_back(std::move(s));
    all_pass = all_pass && r.pass;
  }
  report["suites"] = std::move(suites);
  report["pass"] = all_pass;
  return report.dump(2) + "\n";
}

}  // namespace epcontact
