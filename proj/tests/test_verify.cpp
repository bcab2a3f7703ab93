#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "epcontact/errors.hpp"
#include "epcontact/verify.hpp"

using epcontact::ConfigTangent;
using epcontact::ContactModel;
using epcontact::Error;
using epcontact::IntegratorSpec;
using epcontact::Mat;
using epcontact::Monomial;
using epcontact::ReparamField;
using epcontact::ScalarField;
using epcontact::Topology;
using epcontact::Vec;
using epcontact::WeightedConfig;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

WeightedConfig unit_circle(int n, const ContactModel& model,
                           double weight_wobble = 0.0) {
  Mat pos(n, 3);
  Vec w(n);
  for (int a = 0; a < n; ++a) {
    const double s = kTau * a / n;
    pos(a, 0) = std::cos(s);
    pos(a, 1) = std::sin(s);
    pos(a, 2) = 0.0;
    w[a] = 1.0 + weight_wobble * std::cos(s);
  }
  return WeightedConfig(model, Topology::loop(n), pos, w);
}

// Pole on the x axis just outside the sampled loop, so the pairing residual
// decays at a measurable rate instead of starting at roundoff.
ScalarField pole_field(double offset, double amplitude) {
  ScalarField f;
  f.value = [=](const Vec& x) { return amplitude / (offset - x[0]); };
  f.gradient = [=](const Vec& x) {
    const double d = offset - x[0];
    Vec g = Vec::Zero(x.size());
    g[0] = amplitude / (d * d);
    return g;
  };
  return f;
}

}  // namespace

TEST_CASE("pairing is antisymmetric and bilinear") {
  const auto model = ContactModel::darboux(1);
  const auto config = unit_circle(8, model, 0.3);
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ConfigTangent ta, tb, tc;
  for (ConfigTangent* t : {&ta, &tb, &tc}) {
    t->dx.resize(8, 3);
    t->dh.resize(8);
    for (int a = 0; a < 8; ++a) {
      for (int i = 0; i < 3; ++i) t->dx(a, i) = u(rng);
      t->dh[a] = u(rng);
    }
  }
  const double ab = epcontact::omega_pair(config, ta, tb);
  const double ba = epcontact::omega_pair(config, tb, ta);
  CHECK(std::fabs(ab + ba) < 1e-13);
  CHECK(std::fabs(epcontact::omega_pair(config, ta, ta)) < 1e-13);

  ConfigTangent combo;
  combo.dx = 2.0 * ta.dx + tb.dx;
  combo.dh = 2.0 * ta.dh + tb.dh;
  const double lhs = epcontact::omega_pair(config, combo, tc);
  const double rhs = 2.0 * epcontact::omega_pair(config, ta, tc) +
                     epcontact::omega_pair(config, tb, tc);
  CHECK(std::fabs(lhs - rhs) < 1e-12);
}

TEST_CASE("pairing of coordinate directions at a single node") {
  // At a node with unit weight the block form reduces to the plane area
  // form, so (e_x, 0) against (e_y, 0) pairs to exactly 1.
  Mat pos(1, 3);
  pos << 0, 0, 0;
  Vec w(1);
  w << 1.0;
  const WeightedConfig config(ContactModel::darboux(1), Topology::points(1),
                              pos, w);
  ConfigTangent ex, ey;
  ex.dx = Mat::Zero(1, 3);
  ex.dx(0, 0) = 1.0;
  ex.dh = Vec::Zero(1);
  ey.dx = Mat::Zero(1, 3);
  ey.dx(0, 1) = 1.0;
  ey.dh = Vec::Zero(1);
  CHECK(epcontact::omega_pair(config, ex, ey) == 1.0);

  // (e_z, 0) against the pure weight direction picks up the contact form on
  // e_z with a sign from the ordering.
  ConfigTangent ez, eh;
  ez.dx = Mat::Zero(1, 3);
  ez.dx(0, 2) = 1.0;
  ez.dh = Vec::Zero(1);
  eh.dx = Mat::Zero(1, 3);
  eh.dh = Vec::Ones(1);
  CHECK(epcontact::omega_pair(config, eh, ez) == 1.0);
  CHECK(epcontact::omega_pair(config, ez, eh) == -1.0);

  ConfigTangent wrong;
  wrong.dx = Mat::Zero(2, 3);
  wrong.dh = Vec::Zero(2);
  CHECK_THROWS_AS(epcontact::omega_pair(config, wrong, ez), Error);
}

TEST_CASE("contact generator matches the node-wise lift") {
  const auto model = ContactModel::darboux(1);
  Mat pos(2, 3);
  pos << 1, 2, 3, 0, 0, 0;
  Vec w(2);
  w << 2.0, 5.0;
  const WeightedConfig config(model, Topology::points(2), pos, w);

  SUBCASE("constant potential translates along the vertical axis") {
    const ConfigTangent t =
        epcontact::generator_contact(config, ScalarField::constant(3, 1.0));
    for (int a = 0; a < 2; ++a) {
      CHECK(t.dx(a, 0) == 0.0);
      CHECK(t.dx(a, 1) == 0.0);
      CHECK(t.dx(a, 2) == 1.0);
      CHECK(t.dh[a] == 0.0);
    }
  }

  SUBCASE("linear potential scales the weight down") {
    const ConfigTangent t =
        epcontact::generator_contact(config, ScalarField::coordinate(3, 2));
    CHECK(t.dx(0, 0) == 0.0);
    CHECK(t.dx(0, 1) == 2.0);
    CHECK(t.dx(0, 2) == 3.0);
    CHECK(t.dh[0] == -2.0);
    CHECK(t.dh[1] == -5.0);
  }

  SUBCASE("generator is additive in the potential") {
    const ScalarField f = ScalarField::gaussian_bump(
        (Vec(3) << 0.5, -0.2, 0.1).finished(), 0.9, 1.2);
    const ScalarField g = ScalarField::coordinate(3, 1);
    const ConfigTangent tf = epcontact::generator_contact(config, f);
    const ConfigTangent tg = epcontact::generator_contact(config, g);
    const ConfigTangent tsum = epcontact::generator_contact(config, f + g);
    CHECK((tsum.dx - tf.dx - tg.dx).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((tsum.dh - tf.dh - tg.dh).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reparametrization generator differentiates along the loop") {
  const auto model = ContactModel::darboux(1);
  const int n = 16;
  const auto config = unit_circle(n, model);

  SUBCASE("zero field gives the zero tangent") {
    const ConfigTangent t =
        epcontact::generator_reparam(config, ReparamField::constant_field(0.0));
    CHECK(t.dx.cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.dh.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("constant field slides nodes along the tangent direction") {
    const ConfigTangent t =
        epcontact::generator_reparam(config, ReparamField::constant_field(1.0));
    for (int a = 0; a < n; ++a) {
      const double s = kTau * a / n;
      CHECK(std::fabs(t.dx(a, 0) + std::sin(s)) < 1e-12);
      CHECK(std::fabs(t.dx(a, 1) - std::cos(s)) < 1e-12);
      CHECK(std::fabs(t.dx(a, 2)) < 1e-14);
      // uniform weights and a constant field: the transported density does
      // not change
      CHECK(t.dh[a] == 0.0);
    }
  }

  SUBCASE("weight rate is the derivative of the transported density") {
    ReparamField z;
    z.constant = 0.0;
    z.cos_coeffs = Vec::Zero(0);
    z.sin_coeffs = (Vec(1) << 1.0).finished();  // Z = sin s
    const ConfigTangent t = epcontact::generator_reparam(config, z);
    for (int a = 0; a < n; ++a) {
      const double s = kTau * a / n;
      CHECK(std::fabs(t.dh[a] - std::cos(s)) < 1e-12);
    }
  }

  SUBCASE("point clouds are rejected") {
    Mat pos(2, 3);
    pos << 0, 0, 0, 1, 0, 0;
    Vec w = Vec::Ones(2);
    const WeightedConfig cloud(model, Topology::points(2), pos, w);
    CHECK_THROWS_AS(
        epcontact::generator_reparam(cloud, ReparamField::constant_field(1.0)),
        Error);
  }
}

TEST_CASE("reparametrization field evaluates its series") {
  ReparamField z;
  z.constant = 0.25;
  z.cos_coeffs = (Vec(2) << 0.5, -0.125).finished();
  z.sin_coeffs = (Vec(1) << 1.5).finished();
  const double s = 0.7;
  const double want =
      0.25 + 0.5 * std::cos(s) - 0.125 * std::cos(2 * s) + 1.5 * std::sin(s);
  CHECK(z.value(s) == doctest::Approx(want).epsilon(1e-15));
  const double dwant =
      -0.5 * std::sin(s) + 0.25 * std::sin(2 * s) + 1.5 * std::cos(s);
  CHECK(z.derivative(s) == doctest::Approx(dwant).epsilon(1e-15));
}

TEST_CASE("the two group directions pair to zero at spectral rate") {
  const auto model = ContactModel::darboux(1);
  const ScalarField f = pole_field(1.02, 0.05);
  ReparamField z;
  z.constant = 0.3;
  z.cos_coeffs = (Vec(1) << 0.4).finished();
  z.sin_coeffs = (Vec(1) << -0.2).finished();

  const double res64 =
      epcontact::check_orthogonality(unit_circle(64, model, 0.3), f, z);
  const double res256 =
      epcontact::check_orthogonality(unit_circle(256, model, 0.3), f, z);
  // the coarse grid must sit visibly above roundoff for the decay statement
  // to mean anything
  CHECK(res64 > 1e-11);
  CHECK(res256 <= 1e-10);
  CHECK(res256 < res64 / 100.0);
}

TEST_CASE("smooth potentials pair to roundoff already on coarse grids") {
  const auto model = ContactModel::darboux(1);
  const ScalarField f = ScalarField::gaussian_bump(
      (Vec(3) << 0.4, -0.3, 0.2).finished(), 1.1, 0.8);
  ReparamField z;
  z.constant = -0.2;
  z.cos_coeffs = (Vec(1) << 0.5).finished();
  z.sin_coeffs = (Vec(1) << 0.1).finished();
  const double res = epcontact::check_orthogonality(unit_circle(48, model), f, z);
  CHECK(res < 1e-10);
}

TEST_CASE("pairing against a probe differentiates the momentum functional") {
  const auto model = ContactModel::darboux(1);
  Mat pos(3, 3);
  pos << 0.2, -0.4, 0.1, 1.3, 0.5, -0.2, -0.9, 0.8, 0.6;
  Vec w(3);
  w << 1.0, -0.7, 0.4;
  const WeightedConfig config(model, Topology::points(3), pos, w);

  std::vector<Monomial> terms;
  {
    Monomial m;
    m.coeff = 0.8;
    m.exponents = (Eigen::VectorXi(3) << 1, 0, 1).finished();
    terms.push_back(m);
    m.coeff = -0.5;
    m.exponents = (Eigen::VectorXi(3) << 0, 2, 0).finished();
    terms.push_back(m);
    m.coeff = 0.3;
    m.exponents = (Eigen::VectorXi(3) << 0, 0, 1).finished();
    terms.push_back(m);
  }
  const ScalarField f = ScalarField::polynomial(epcontact::Polynomial(3, terms));

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    ConfigTangent probe;
    probe.dx.resize(3, 3);
    probe.dh.resize(3);
    for (int a = 0; a < 3; ++a) {
      for (int i = 0; i < 3; ++i) probe.dx(a, i) = u(rng);
      probe.dh[a] = u(rng);
    }
    CHECK(epcontact::check_moment_identity(config, f, probe) <= 1e-7);
  }
}

TEST_CASE("node-wise lifted flow follows the closed-form solution") {
  // For f = z the lifted field is (0, y, z, -h): positions grow
  // exponentially in (y, z) and the weight decays at the same rate.
  const auto model = ContactModel::darboux(1);
  Mat pos(1, 3);
  pos << 1, 2, 3;
  Vec w(1);
  w << 2.0;
  const WeightedConfig config(model, Topology::points(1), pos, w);
  const WeightedConfig after = epcontact::apply_contact_flow(
      config, ScalarField::coordinate(3, 2), 0.5, 1e-3);
  const double growth = std::exp(0.5);
  CHECK(std::fabs(after.positions()(0, 0) - 1.0) < 1e-12);
  CHECK(std::fabs(after.positions()(0, 1) - 2.0 * growth) < 1e-10);
  CHECK(std::fabs(after.positions()(0, 2) - 3.0 * growth) < 1e-10);
  CHECK(std::fabs(after.weights()[0] - 2.0 / growth) < 1e-10);
  CHECK_THROWS_AS(
      epcontact::apply_contact_flow(config, ScalarField::constant(3, 1.0), 1.0, 0.0),
      Error);
}

TEST_CASE("transported density is invariant under lifted flows") {
  const auto model = ContactModel::rotational3();
  const int n = 64;
  Mat pos(n, 3);
  Vec w(n);
  for (int a = 0; a < n; ++a) {
    const double s = kTau * a / n;
    pos(a, 0) = std::cos(s);
    pos(a, 1) = std::sin(s);
    pos(a, 2) = 0.0;
    w[a] = 1.0 + 0.2 * std::sin(s);
  }
  const WeightedConfig config(model, Topology::loop(n), pos, w);
  IntegratorSpec spec;
  spec.dt = 5e-3;

  SUBCASE("zero potential leaves the density untouched") {
    CHECK(epcontact::check_jr_invariance(config, ScalarField::constant(3, 0.0),
                                         0.4, spec) == 0.0);
  }

  SUBCASE("vertical translation leaves the density untouched") {
    CHECK(epcontact::check_jr_invariance(config, ScalarField::constant(3, 1.0),
                                         0.4, spec) <= 1e-12);
  }

  SUBCASE("a generic bump changes nodes but not the density") {
    const ScalarField f = ScalarField::gaussian_bump(
        (Vec(3) << 0.6, 0.1, -0.2).finished(), 1.0, 0.5);
    CHECK(epcontact::check_jr_invariance(config, f, 0.3, spec) <= 1e-8);
    // sanity: the flow genuinely moved the nodes
    const WeightedConfig moved =
        epcontact::apply_contact_flow(config, f, 0.3, spec.dt);
    CHECK((moved.positions() - config.positions()).cwiseAbs().maxCoeff() >
          1e-3);
  }

  SUBCASE("point clouds are rejected") {
    Mat ppos(2, 3);
    ppos << 0, 0, 0, 1, 0, 0;
    const WeightedConfig cloud(model, Topology::points(2), ppos, Vec::Ones(2));
    CHECK_THROWS_AS(epcontact::check_jr_invariance(
                        cloud, ScalarField::constant(3, 1.0), 0.1, spec),
                    Error);
  }
}
