#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stlsmooth/error.hpp"
#include "stlsmooth/gradient.hpp"
#include "stlsmooth/synthesis.hpp"
#include "support.hpp"

using namespace stlsmooth;

namespace {

SmoothConfig config(Srm srm, double k1, double k2) {
  SmoothConfig c;
  c.srm = srm;
  c.defaults = {k1, k2};
  return c;
}

const Srm kSrms[] = {Srm::SRM1, Srm::SRM2, Srm::SRM3, Srm::SRM4};

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST_CASE("signal gradient examples") {
  auto p = std::make_shared<Predicate>(Predicate::affine("p", {0.5, -2.0}, 1.0));
  const Signal s(std::vector<std::vector<double>>{{1, 2}, {3, 4}, {5, 6}});
  auto g = grad_wrt_signal(Formula::pred(p), s, config(Srm::SRM1, 1, 1));
  CHECK(g == std::vector<double>{0.5, -2.0, 0, 0, 0, 0});

  auto x = std::make_shared<Predicate>(Predicate::affine("x", {1.0}, 0.0));
  const Signal s2(std::vector<std::vector<double>>{{1.0}, {0.0}});
  g = grad_wrt_signal(Formula::eventually(0, 1, Formula::pred(x)), s2, config(Srm::SRM1, 1, 1));
  CHECK(g[0] == doctest::Approx(0.731059).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(0.268941).epsilon(1e-6));
}

TEST_CASE("signal gradient matches finite differences and has a zero prefix") {
  oracle::Generator gen(2, 3);
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen.nnf(4);
    const int t = gen.pick(0, 2);
    const Signal s = gen.signal(horizon(f) + t + gen.pick(0, 2));
    const auto cfg = config(kSrms[i % 4], 1 + gen.pick(0, 4), 1 + gen.pick(0, 4));
    const auto g = grad_wrt_signal(f, s, cfg, t);
    const auto fd = finite_diff_grad(
        [&](std::span<const double> v) {
          return smooth_robustness(f, Signal(s.dims(), {v.begin(), v.end()}), cfg, t);
        },
        s.data(), 1e-6);
    CHECK(relative_error(to_vec(g), to_vec(fd)) < 1e-6);
    for (std::size_t j = 0; j < static_cast<std::size_t>(t) * s.q(); ++j) CHECK(g[j] == 0.0);
  }
}

TEST_CASE("operator weights form a partition of unity on a shared channel") {
  auto x = std::make_shared<Predicate>(Predicate::affine("x", {1.0}, 0.0));
  const Formula p = Formula::pred(x);
  const Formula f = Formula::conj({Formula::always(0, 3, Formula::disj({p, Formula::eventually(1, 2, p)})),
                                   Formula::eventually(0, 4, p)});
  oracle::Generator gen(3, 1);
  for (Srm srm : {Srm::SRM1}) {
    for (int i = 0; i < 20; ++i) {
      const Signal s = gen.signal(horizon(f));
      const auto g = grad_wrt_signal(f, s, config(srm, 2, 2));
      double sum = 0;
      for (double v : g) sum += v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("signal Jacobian structure") {
  const System si = single_integrator_2d(1.0);
  const ControlSequence u = ControlSequence::Random(2, 5);
  const Mat J = signal_jacobian(si, u, Vec::Zero(2));
  const Eigen::Index q = 6, m = 2;
  CHECK(J.rows() == 5 * q);
  CHECK(J.cols() == 5 * m);
  for (Eigen::Index t = 0; t < 5; ++t) {
    for (Eigen::Index tau = 0; tau < 5; ++tau) {
      const Mat blk = J.block(t * q, tau * m, q, m);
      if (tau > t) CHECK(blk.isZero());
      if (tau < t) CHECK(blk.block(2, 0, 2, 2).isApprox(Mat::Identity(2, 2)));
      CHECK(blk.block(4, 0, 2, 2).isApprox(t == tau ? Mat(Mat::Identity(2, 2)) : Mat(Mat::Zero(2, 2))));
    }
  }
  const System sc = linear_system(Mat::Constant(1, 1, 2.0), Mat::Constant(1, 1, 1.0),
                                  Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 0.5));
  const Mat Js = signal_jacobian(sc, ControlSequence::Zero(1, 4), Vec::Zero(1));
  CHECK(Js(3 * 3 + 1, 0) == 4.0);  // dx_3/du_0
  CHECK(Js(2 * 3, 2) == 0.5);      // dy_2/du_2 = D
  // cross-check dx_3/du_0 with differences of the rollout
  auto x3 = [&](double u0) {
    ControlSequence uu = ControlSequence::Zero(1, 4);
    uu(0, 0) = u0;
    return rollout(sc, uu, Vec::Zero(1)).x(3)[0];
  };
  CHECK((x3(1e-3) - x3(-1e-3)) / 2e-3 == doctest::Approx(4.0));
}

TEST_CASE("control gradients: adjoint, dense and finite differences agree") {
  oracle::Generator gen(10, 1);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 3, m = 1 + i % 2, p = 1 + i % 2;
    const Mat A = Mat::Random(n, n) * 0.5 + Mat::Identity(n, n) * 0.5;
    const System sys = linear_system(A, Mat::Random(n, m), Mat::Random(p, n), Mat::Random(p, m));
    const std::size_t q = static_cast<std::size_t>(n + m + p);
    oracle::Generator fg(100 + static_cast<std::uint64_t>(i), q);
    const Formula f = fg.nnf(3);
    const int T = std::min(30, horizon(f) + 3);
    const ControlSequence u = ControlSequence::Random(m, T + 1);
    const Vec x0 = Vec::Random(n);
    const auto cfg = config(kSrms[i % 4], 1 + i % 5, 1 + (i + 2) % 5);
    const Vec adj = grad_wrt_controls(f, sys, u, x0, cfg);
    const Vec dense = grad_wrt_controls(f, sys, u, x0, cfg, GradientPath::Dense);
    CHECK(relative_error(adj, dense) < 1e-10);
    const auto fd = finite_diff_grad(
        [&](std::span<const double> v) {
          const Eigen::Map<const ControlSequence> uu(v.data(), m, T + 1);
          return smooth_robustness(f, rollout(sys, uu, x0), cfg);
        },
        std::span<const double>(u.data(), u.size()));
    CHECK(relative_error(adj, to_vec(fd)) < 1e-5);
  }
}

TEST_CASE("u-only formulas: control gradient equals the u blocks") {
  const SynthesisProblem prob = build_scp(1);
  std::vector<double> c(6, 0.0);
  c[4] = 1.0;
  c[5] = -0.5;
  const Formula f = Formula::always(0, 20, Formula::pred(std::make_shared<Predicate>(Predicate::affine("uu", c, 0.3))));
  const ControlSequence u = ControlSequence::Random(2, 21);
  const auto cfg = config(Srm::SRM3, 3, 3);
  const Vec gu = grad_wrt_controls(f, prob.system, u, prob.x0, cfg);
  const auto gs = grad_wrt_signal(f, rollout(prob.system, u, prob.x0), cfg);
  for (int t = 0; t <= 20; ++t) {
    CHECK(gu(2 * t) == gs[static_cast<std::size_t>(6 * t + 4)]);
    CHECK(gu(2 * t + 1) == gs[static_cast<std::size_t>(6 * t + 5)]);
  }
}

TEST_CASE("finite-difference helper") {
  const std::vector<double> three{3.0};
  auto g = finite_diff_grad([](std::span<const double> v) { return v[0] * v[0]; }, three);
  CHECK(g[0] == doctest::Approx(6.0));
  g = finite_diff_grad([](std::span<const double>) { return 2.0; }, std::vector<double>{1, 2});
  CHECK(g == std::vector<double>{0, 0});
  g = finite_diff_grad([](std::span<const double> v) { return oracle::op(OpKind::QuasiMax, {v[0], v[1]}, 1); },
                       std::vector<double>{1, 0});
  CHECK(g[0] == doctest::Approx(0.731059).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(0.268941).epsilon(1e-6));
  CHECK_THROWS_AS(finite_diff_grad([](std::span<const double>) { return 0.0; }, three, 0.0), ConfigError);
}
