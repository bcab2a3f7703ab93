#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "epcontact/epdiff.hpp"
#include "epcontact/errors.hpp"

#include "oracles.hpp"

using epcontact::BasePolicy;
using epcontact::ContactModel;
using epcontact::Covector2;
using epcontact::Error;
using epcontact::ErrorCode;
using epcontact::IntegratorSpec;
using epcontact::KernelSpec;
using epcontact::LandmarkConfig;
using epcontact::LandmarkTangent;
using epcontact::LandmarkTrajectory;
using epcontact::Mat;
using epcontact::Monomial;
using epcontact::PlanarField;
using epcontact::Polynomial;
using epcontact::RunStatus;
using epcontact::ScalarField;
using epcontact::Topology;
using epcontact::Vec;
using epcontact::WeightedConfig;

namespace {

constexpr double kPi = std::numbers::pi;

Polynomial planar_poly(std::initializer_list<std::tuple<double, int, int>> terms) {
  std::vector<Monomial> ms;
  for (const auto& [c, e0, e1] : terms) {
    Monomial m;
    m.coeff = c;
    m.exponents = (Eigen::VectorXi(2) << e0, e1).finished();
    ms.push_back(std::move(m));
  }
  return Polynomial(2, ms);
}

WeightedConfig projectivized_cloud() {
  Mat pos(5, 3);
  pos << 0.2, -0.4, 0.3,  //
      1.1, 0.5, 2.0,      //
      -0.7, 0.9, 4.4,     //
      0.4, 1.3, 1.1,      //
      -1.2, -0.8, 5.7;
  Vec w(5);
  w << 1.0, -0.6, 0.8, 1.7, -1.1;
  return WeightedConfig(ContactModel::projectivized2(), Topology::points(5),
                        pos, w);
}

}  // namespace

TEST_CASE("chart map sends fiber coordinates to planar covectors") {
  const Covector2 cv = epcontact::kappa(Eigen::Vector2d(1.0, 2.0), 0.0, 3.0);
  CHECK(cv.q[0] == 1.0);
  CHECK(cv.q[1] == 2.0);
  CHECK(cv.p[0] == 3.0);
  CHECK(cv.p[1] == 0.0);

  const Covector2 down = epcontact::kappa(Eigen::Vector2d(0.0, 0.0), kPi / 2, -1.0);
  CHECK(std::fabs(down.p[0]) < 1e-15);
  CHECK(std::fabs(down.p[1] + 1.0) < 1e-15);

  CHECK_THROWS_AS(epcontact::kappa(Eigen::Vector2d(1.0, 0.0), 0.3, 0.0), Error);
}

TEST_CASE("antipodal fiber points map to the same covector") {
  const Eigen::Vector2d q(0.4, -1.2);
  for (double theta : {0.0, 0.7, 2.4, 5.1}) {
    for (double t : {1.3, -0.6}) {
      const Covector2 a = epcontact::kappa(q, theta, t);
      const Covector2 b = epcontact::kappa(q, theta + kPi, -t);
      CHECK((a.p - b.p).norm() < 1e-12);
      CHECK((a.q - b.q).norm() == 0.0);
    }
  }
}

TEST_CASE("chart map is injective away from the antipodal identification") {
  const Eigen::Vector2d q(0.0, 0.0);
  std::vector<Covector2> images;
  for (int i = 0; i < 8; ++i) {
    for (double t : {-2.0, -1.0, 1.0, 2.0}) {
      images.push_back(epcontact::kappa(q, 0.8 * i, t));
    }
  }
  // No pair in this grid is antipodal-related, so all covectors are distinct.
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      CHECK((images[i].p - images[j].p).norm() > 1e-3);
    }
  }
}

TEST_CASE("fiber-linear potential of a planar field") {
  SUBCASE("unit field along the first axis") {
    const ScalarField f =
        epcontact::lift_hamiltonian(PlanarField::constant(Eigen::Vector2d(1, 0)));
    CHECK(f.value((Vec(3) << 0.7, -0.3, 0.0).finished()) == 1.0);
    CHECK(f.value((Vec(3) << 0.7, -0.3, 2.0).finished()) ==
          doctest::Approx(std::cos(2.0)).epsilon(1e-15));
  }

  SUBCASE("orthogonal direction vanishes") {
    const ScalarField f =
        epcontact::lift_hamiltonian(PlanarField::constant(Eigen::Vector2d(0, 1)));
    CHECK(f.value((Vec(3) << 0.7, -0.3, 0.0).finished()) == 0.0);
  }

  SUBCASE("rotation field at a quarter turn") {
    const PlanarField rot = PlanarField::polynomial(
        planar_poly({{-1.0, 0, 1}}), planar_poly({{1.0, 1, 0}}));
    const ScalarField f = epcontact::lift_hamiltonian(rot);
    CHECK(std::fabs(f.value((Vec(3) << 1.0, 0.0, kPi / 2).finished()) - 1.0) <
          1e-15);
  }

  SUBCASE("gradient agrees with finite differences") {
    const PlanarField y = PlanarField::polynomial(
        planar_poly({{0.8, 2, 0}, {-0.5, 1, 1}, {0.3, 0, 0}}),
        planar_poly({{0.4, 0, 2}, {0.9, 1, 0}}));
    const ScalarField f = epcontact::lift_hamiltonian(y);
    const Vec x = (Vec(3) << 0.6, -0.4, 1.1).finished();
    const Vec fd = oracles::fd_gradient([&](const Vec& p) { return f.value(p); }, x);
    CHECK((f.gradient(x) - fd).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("landmark direction field") {
  const auto kernel = KernelSpec::gaussian(1.0);

  SUBCASE("a single landmark coasts") {
    Mat q(1, 2), p(1, 2);
    q << 0.3, -0.2;
    p << 2.0, 1.0;
    const LandmarkTangent t = epcontact::epdiff_rhs(LandmarkConfig(q, p), kernel);
    CHECK(t.dq(0, 0) == 2.0);
    CHECK(t.dq(0, 1) == 1.0);
    CHECK(t.dp(0, 0) == 0.0);
    CHECK(t.dp(0, 1) == 0.0);
  }

  SUBCASE("zero momenta give the zero tangent") {
    Mat q(2, 2), p(2, 2);
    q << 0, 0, 1, 0;
    p << 0, 0, 0, 0;
    const LandmarkTangent t = epcontact::epdiff_rhs(LandmarkConfig(q, p), kernel);
    CHECK(t.dq.cwiseAbs().maxCoeff() == 0.0);
    CHECK(t.dp.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("distant landmarks decouple") {
    Mat q(2, 2), p(2, 2);
    q << 0, 0, 80, 0;
    p << 1.5, -0.5, 0.25, 2.0;
    const LandmarkTangent t = epcontact::epdiff_rhs(LandmarkConfig(q, p), kernel);
    CHECK(t.dq(0, 0) == 1.5);
    CHECK(t.dq(1, 1) == 2.0);
    CHECK(t.dp.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("head-on pair exchanges momentum symmetrically") {
    Mat q(2, 2), p(2, 2);
    q << -1, 0, 1, 0;
    p << 1, 0, -1, 0;
    const LandmarkTangent t = epcontact::epdiff_rhs(LandmarkConfig(q, p), kernel);
    const double k = std::exp(-2.0);
    CHECK(std::fabs(t.dq(0, 0) - (1.0 - k)) < 1e-15);
    CHECK(std::fabs(t.dq(1, 0) + (1.0 - k)) < 1e-15);
    CHECK(std::fabs(t.dp(0, 0) - 2.0 * k) < 1e-15);
    CHECK(std::fabs(t.dp(1, 0) + 2.0 * k) < 1e-15);
    CHECK(t.dq(0, 1) == 0.0);
    CHECK(t.dp(0, 1) == 0.0);
  }
}

TEST_CASE("landmark direction field satisfies the canonical equations") {
  const auto kernel = KernelSpec::gaussian(0.8);
  Mat q(3, 2), p(3, 2);
  q << 0.1, -0.3, 0.9, 0.4, -0.6, 0.7;
  p << 1.2, 0.3, -0.8, 0.5, 0.4, -1.1;
  const LandmarkConfig config(q, p);
  const LandmarkTangent t = epcontact::epdiff_rhs(config, kernel);

  const double step = 1e-5;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 2; ++i) {
      auto h_of_p = [&](double eps) {
        Mat pp = p;
        pp(a, i) += eps;
        return epcontact::landmark_hamiltonian(LandmarkConfig(q, pp), kernel);
      };
      auto h_of_q = [&](double eps) {
        Mat qq = q;
        qq(a, i) += eps;
        return epcontact::landmark_hamiltonian(LandmarkConfig(qq, p), kernel);
      };
      const double dhdp = (h_of_p(step) - h_of_p(-step)) / (2 * step);
      const double dhdq = (h_of_q(step) - h_of_q(-step)) / (2 * step);
      CHECK(std::fabs(t.dq(a, i) - dhdp) < 1e-8);
      CHECK(std::fabs(t.dp(a, i) + dhdq) < 1e-8);
    }
  }
}

TEST_CASE("landmark states validate their shape") {
  Mat q(2, 2), p(2, 2);
  q << 0, 0, 0, 0;  // coincident base points
  p << 1, 0, 0, 1;
  CHECK_THROWS_AS(LandmarkConfig(Mat(q), Mat(p)), Error);
  const LandmarkConfig relaxed = LandmarkConfig::unchecked(q, p);
  CHECK(relaxed.size() == 2);

  Mat bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(LandmarkConfig(bad, bad), Error);
  Mat qn(1, 2), pn(1, 2);
  qn << 0, 0;
  pn << std::nan(""), 0;
  CHECK_THROWS_AS(LandmarkConfig(qn, pn), Error);
}

TEST_CASE("single landmark integrates to a straight line") {
  Mat q(1, 2), p(1, 2);
  q << 0.3, -0.2;
  p << 1.5, 0.5;
  IntegratorSpec spec;
  spec.dt = 1e-2;
  spec.t_final = 1.0;
  const LandmarkTrajectory traj = epcontact::integrate_landmarks(
      LandmarkConfig(q, p), KernelSpec::gaussian(1.0), spec);
  REQUIRE(traj.status == RunStatus::Completed);
  const LandmarkConfig& fin = traj.states.back();
  CHECK(std::fabs(fin.q()(0, 0) - 1.8) < 1e-12);
  CHECK(std::fabs(fin.q()(0, 1) - 0.3) < 1e-12);
  CHECK(fin.p()(0, 0) == 1.5);
  CHECK(fin.p()(0, 1) == 0.5);
  for (double e : traj.energies) {
    CHECK(e == doctest::Approx(0.5 * (1.5 * 1.5 + 0.5 * 0.5)).epsilon(1e-15));
  }
}

TEST_CASE("head-on collision conserves energy and mirror symmetry") {
  Mat q(2, 2), p(2, 2);
  q << -1, 0, 1, 0;
  p << 1, 0, -1, 0;
  IntegratorSpec spec;
  spec.dt = 1e-3;
  spec.t_final = 2.0;
  const LandmarkTrajectory traj = epcontact::integrate_landmarks(
      LandmarkConfig(q, p), KernelSpec::gaussian(1.0), spec);
  REQUIRE(traj.status == RunStatus::Completed);
  const double h0 = traj.energies.front();
  for (double e : traj.energies) {
    CHECK(std::fabs(e - h0) / std::fabs(h0) < 1e-10);
  }
  for (const LandmarkConfig& s : traj.states) {
    CHECK(std::fabs(s.q()(0, 0) + s.q()(1, 0)) < 1e-12);
    CHECK(std::fabs(s.p()(0, 0) + s.p()(1, 0)) < 1e-12);
  }
  // times are strictly increasing and cover [0, T]
  REQUIRE(traj.times.size() >= 2);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    CHECK(traj.times[i] > traj.times[i - 1]);
  }
}

TEST_CASE("landmark integrator edge cases") {
  Mat q(1, 2), p(1, 2);
  q << 0, 0;
  p << 1, 0;
  const LandmarkConfig config(q, p);
  const auto kernel = KernelSpec::gaussian(1.0);

  SUBCASE("zero-length runs observe exactly once") {
    IntegratorSpec spec;
    spec.t_final = 0.0;
    const LandmarkTrajectory traj =
        epcontact::integrate_landmarks(config, kernel, spec);
    CHECK(traj.times.size() == 1);
    CHECK(traj.states.size() == 1);
    CHECK(traj.energies.size() == 1);
  }

  SUBCASE("invalid step sizes are rejected") {
    IntegratorSpec spec;
    spec.dt = 0.0;
    CHECK_THROWS_AS(epcontact::integrate_landmarks(config, kernel, spec), Error);
  }

  SUBCASE("overflowing momenta end in a divergence status") {
    Mat q2(2, 2), p2(2, 2);
    q2 << 0, 0, 0.5, 0;
    p2 << 1e160, 0, 1e160, 0;
    IntegratorSpec spec;
    spec.dt = 1e-2;
    spec.t_final = 1.0;
    const LandmarkTrajectory traj =
        epcontact::integrate_landmarks(LandmarkConfig(q2, p2), kernel, spec);
    CHECK(traj.status == RunStatus::Divergence);
    CHECK_FALSE(traj.message.empty());
  }
}

TEST_CASE("pushforward to landmarks folds node weights into momenta") {
  SUBCASE("point cloud uses unit node weight") {
    Mat pos(2, 3);
    pos << 0, 0, 0, 1, 0, kPi / 2;
    Vec w(2);
    w << 2.0, -1.0;
    const WeightedConfig config(ContactModel::projectivized2(),
                                Topology::points(2), pos, w);
    const LandmarkConfig lm = epcontact::to_landmarks(config);
    CHECK(lm.q()(0, 0) == 0.0);
    CHECK(lm.p()(0, 0) == 2.0);
    CHECK(std::fabs(lm.p()(0, 1)) < 1e-15);
    CHECK(std::fabs(lm.p()(1, 0)) < 1e-15);
    CHECK(std::fabs(lm.p()(1, 1) + 1.0) < 1e-15);
  }

  SUBCASE("loops scale momenta by the quadrature weight") {
    const int n = 16;
    Mat pos(n, 3);
    Vec w(n);
    for (int a = 0; a < n; ++a) {
      const double s = 2.0 * kPi * a / n;
      pos(a, 0) = std::cos(s);
      pos(a, 1) = std::sin(s);
      pos(a, 2) = s;
      w[a] = 1.0;
    }
    const WeightedConfig config(ContactModel::projectivized2(),
                                Topology::loop(n), pos, w);
    const LandmarkConfig lm = epcontact::to_landmarks(config);
    const double mu = 2.0 * kPi / n;
    CHECK(std::fabs(lm.p()(0, 0) - mu) < 1e-15);
    CHECK(std::fabs(lm.p()(0, 1)) < 1e-15);
  }

  SUBCASE("coincident base points follow the policy") {
    Mat pos(2, 3);
    pos << 0.5, 0.5, 0.3, 0.5, 0.5, 2.0;
    Vec w(2);
    w << 1.0, 1.0;
    const WeightedConfig config(ContactModel::projectivized2(),
                                Topology::points(2), pos, w);
    std::ostringstream log;
    const LandmarkConfig lm =
        epcontact::to_landmarks(config, BasePolicy::Warn, &log);
    CHECK(lm.size() == 2);
    CHECK(log.str().find("share a base point") != std::string::npos);
    CHECK_THROWS_AS(epcontact::to_landmarks(config, BasePolicy::Reject), Error);
    try {
      epcontact::to_landmarks(config, BasePolicy::Reject);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateEmbedding);
    }
  }

  SUBCASE("other models are rejected") {
    Mat pos(1, 3);
    pos << 0, 0, 0;
    const WeightedConfig config(ContactModel::darboux(1), Topology::points(1),
                                pos, Vec::Ones(1));
    CHECK_THROWS_AS(epcontact::to_landmarks(config), Error);
  }
}

TEST_CASE("momentum pairings agree across the chart map") {
  const PlanarField y = PlanarField::polynomial(
      planar_poly({{0.7, 2, 1}, {-0.4, 0, 3}, {0.9, 1, 0}, {0.2, 0, 0}}),
      planar_poly({{-0.6, 3, 0}, {0.5, 1, 1}, {-0.8, 0, 0}}));

  SUBCASE("point cloud") {
    CHECK(epcontact::check_diagram(projectivized_cloud(), y) <= 1e-12);
  }

  SUBCASE("loop configuration") {
    const int n = 16;
    Mat pos(n, 3);
    Vec w(n);
    for (int a = 0; a < n; ++a) {
      const double s = 2.0 * kPi * a / n;
      pos(a, 0) = 1.3 * std::cos(s);
      pos(a, 1) = 0.8 * std::sin(s);
      pos(a, 2) = std::fmod(s + 0.4, 2.0 * kPi);
      w[a] = 1.0 + 0.3 * std::sin(s);
    }
    const WeightedConfig config(ContactModel::projectivized2(),
                                Topology::loop(n), pos, w);
    CHECK(epcontact::check_diagram(config, y) <= 1e-12);
  }

  SUBCASE("zero field pairs to zero") {
    CHECK(epcontact::check_diagram(
              projectivized_cloud(),
              PlanarField::constant(Eigen::Vector2d(0, 0))) == 0.0);
  }

  SUBCASE("antipodal flips of node and weight give the same pairing data") {
    Mat pos(1, 3), anti(1, 3);
    pos << 0.3, -0.8, 1.1;
    anti << 0.3, -0.8, 1.1 + kPi;
    Vec w(1), nw(1);
    w << 0.9;
    nw << -0.9;
    const WeightedConfig a(ContactModel::projectivized2(), Topology::points(1),
                           pos, w);
    const WeightedConfig b(ContactModel::projectivized2(), Topology::points(1),
                           anti, nw);
    const LandmarkConfig la = epcontact::to_landmarks(a);
    const LandmarkConfig lb = epcontact::to_landmarks(b);
    CHECK((la.p() - lb.p()).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("other models are rejected") {
    Mat pos(1, 3);
    pos << 0, 0, 0;
    const WeightedConfig config(ContactModel::darboux(1), Topology::points(1),
                                pos, Vec::Ones(1));
    CHECK_THROWS_AS(epcontact::check_diagram(config, y), Error);
  }
}

TEST_CASE("chart map pulls the canonical form back to the fiber pairing") {
  std::mt19937_64 rng(515);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector2d q(u(rng), u(rng));
    const double theta = std::fabs(u(rng)) * 4.0;
    double t = u(rng);
    if (std::fabs(t) < 0.2) t = 0.5;
    Eigen::Vector4d v;
    v << u(rng), u(rng), u(rng), u(rng);
    CHECK(epcontact::check_theta_pullback(q, theta, t, v) <= 1e-8);
  }

  SUBCASE("vertical directions are killed by both forms") {
    Eigen::Vector4d vert;
    vert << 0, 0, 0, 1;
    CHECK(epcontact::check_theta_pullback(Eigen::Vector2d(0.7, -0.1), 0.0, 1.3,
                                          vert) == 0.0);
  }

  SUBCASE("invalid inputs are rejected") {
    Eigen::Vector4d v = Eigen::Vector4d::Ones();
    CHECK_THROWS_AS(
        epcontact::check_theta_pullback(Eigen::Vector2d(0, 0), 0.1, 0.0, v),
        Error);
    CHECK_THROWS_AS(
        epcontact::check_theta_pullback(Eigen::Vector2d(0, 0), 0.1, 1.0, v, 0.0),
        Error);
  }
}
