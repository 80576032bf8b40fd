#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "stlsmooth/error.hpp"
#include "stlsmooth/error_semantics.hpp"
#include "stlsmooth/semantics.hpp"
#include "support.hpp"

using namespace stlsmooth;

namespace {

PredicatePtr chan_pred(const std::string& name, Interval noise = {}) {
  return std::make_shared<Predicate>(Predicate::affine(name, {1.0}, 0.0).with_noise(noise));
}

SmoothConfig config(Srm srm, double k1, double k2, bool noise = false) {
  SmoothConfig c;
  c.srm = srm;
  c.defaults = {k1, k2};
  c.noise_enabled = noise;
  return c;
}

const Srm kSrms[] = {Srm::SRM1, Srm::SRM2, Srm::SRM3, Srm::SRM4};

}  // namespace

TEST_CASE("examples") {
  const Formula p = Formula::pred(chan_pred("p")), q = Formula::pred(chan_pred("q"));
  const Signal s(std::vector<std::vector<double>>{{1.0}});
  ErrorReport r = error_interval(Formula::conj({p, q}), s, config(Srm::SRM1, 1, 1));
  CHECK(r.interval.lo == 0.0);
  CHECK(r.interval.hi == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(r.width == r.interval.width());
  CHECK(r.per_node.at("/") == r.interval);

  const Formula noisy = Formula::pred(chan_pred("n", {-0.01, 0.01}));
  r = error_interval(noisy, s, config(Srm::SRM1, 1, 1, true));
  CHECK(r.interval == Interval{-0.01, 0.01});
  const Formula skew = Formula::pred(chan_pred("m", {-0.02, 0.05}));
  CHECK(error_interval(skew, s, config(Srm::SRM1, 1, 1, true)).interval == Interval{-0.05, 0.02});
  CHECK(error_interval(Formula::negate(skew), s, config(Srm::SRM1, 1, 1, true)).interval ==
        Interval{-0.02, 0.05});
  // noise disabled: leaves contribute nothing
  CHECK(error_interval(skew, s, config(Srm::SRM1, 1, 1, false)).interval == Interval{0, 0});
}

TEST_CASE("signal-free examples") {
  const Formula g = Formula::always(0, 20, Formula::pred(chan_pred("p")));
  ErrorReport r = error_interval_signal_free(g, config(Srm::SRM1, 3, 3), 1.0);
  CHECK(r.interval.lo == 0.0);
  CHECK(r.interval.hi == doctest::Approx(std::log(21.0) / 3).epsilon(1e-14));
  CHECK(r.interval.hi == doctest::Approx(1.0148).epsilon(1e-4));
  const double w6 = error_interval_signal_free(g, config(Srm::SRM1, 6, 6), 1.0).width;
  CHECK(w6 == doctest::Approx(r.width / 2).epsilon(1e-14));

  oracle::Generator gen(4, 2);
  for (int i = 0; i < 100; ++i) {
    const Formula f = gen.nnf(4);
    CHECK(error_interval_signal_free(f, config(Srm::SRM2, 2, 2), 5.0).interval.lo == 0.0);
    CHECK(error_interval_signal_free(f, config(Srm::SRM3, 2, 2), 5.0).interval.hi == 0.0);
  }
}

TEST_CASE("certify and termination threshold") {
  ErrorReport r;
  r.interval = {-0.01, 4.245};
  Interval c = certify(-0.772, r);
  CHECK(c.lo == doctest::Approx(-0.782));
  CHECK(c.hi == doctest::Approx(3.473));
  CHECK(c.contains(0.338));
  r.interval = {-3.982, 0.01};
  c = certify(0.698, r);
  CHECK(c.lo == doctest::Approx(-3.284));
  CHECK(c.hi == doctest::Approx(0.708));
  CHECK(c.contains(0.401));
  r.interval = {0, 0};
  CHECK(certify(1.5, r) == Interval{1.5, 1.5});

  r.interval = {-0.01, 1};
  CHECK(termination_threshold(-1, r) == doctest::Approx(-0.99));
  CHECK(-0.772 >= termination_threshold(-1, r));
  r.interval = {0, 1};
  CHECK(termination_threshold(0, r) == 0.0);
  r.interval = {-0.5, 1};
  CHECK(termination_threshold(0, r) == 0.5);
}

TEST_CASE("agrees with the naive error recursion") {
  oracle::Generator gen(6, 3);
  gen.set_noise({-0.01, 0.02});
  for (int i = 0; i < 400; ++i) {
    const Formula f = gen.nnf(4);
    const Signal s = gen.signal(horizon(f) + 1);
    const Srm srm = kSrms[i % 4];
    const bool noise = i % 3 == 0;
    const double k = 0.5 + gen.pick(0, 5);
    const Interval got = error_interval(f, s, config(srm, k, k, noise)).interval;
    const Interval want = oracle::Smooth{srm, k, k, noise}.error(f, s, 0);
    CHECK(std::abs(got.lo - want.lo) < 1e-9);
    CHECK(std::abs(got.hi - want.hi) < 1e-9);
  }
}

TEST_CASE("containment and signal-free dominance") {
  oracle::Generator gen(13, 3);
  gen.set_noise({-0.01, 0.01});
  for (int i = 0; i < 800; ++i) {
    const Formula f = gen.nnf(4);
    const Signal s = gen.signal(horizon(f) + gen.pick(0, 3));
    const auto cfg = config(kSrms[i % 4], 0.5 + (i % 7), 0.5 + (i % 5), i % 2 == 0);
    const double gap = robustness(f, s) - smooth_robustness(f, s, cfg);
    const ErrorReport rep = error_interval(f, s, cfg);
    CHECK(rep.interval.contains(gap, 1e-9));
    const double D = operator_input_range(f, s, cfg).width();
    CHECK(rep.interval.subset_of(error_interval_signal_free(f, cfg, D).interval, 1e-9));
  }
}

TEST_CASE("noise floors: SRM2 lower and SRM3 upper endpoints") {
  oracle::Generator gen(19, 3);
  gen.set_noise({-0.01, 0.01});
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen.nnf(4);
    const Signal s = gen.signal(horizon(f));
    CHECK(error_interval(f, s, config(Srm::SRM2, 3, 3, true)).interval.lo == -0.01);
    CHECK(error_interval(f, s, config(Srm::SRM3, 3, 3, true)).interval.hi == 0.01);
    CHECK(error_interval(f, s, config(Srm::SRM2, 3, 3, false)).interval.lo == 0.0);
  }
}

TEST_CASE("per-node report and JSON") {
  const Formula p = Formula::pred(chan_pred("p"));
  const Formula f = Formula::conj({Formula::always(0, 1, p), Formula::eventually(1, 2, p)});
  const Signal s(std::vector<std::vector<double>>{{1.0}, {2.0}, {-1.0}});
  const ErrorReport r = error_interval(f, s, config(Srm::SRM1, 2, 2));
  CHECK(r.per_node.size() == 5);
  CHECK(r.per_node.count("/1/0") == 1);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["lo"].get<double>() == r.interval.lo);
  CHECK(j["hi"].get<double>() == r.interval.hi);
  CHECK(j["width"].get<double>() == r.width);
  CHECK(j["per_node"]["/"][1].get<double>() == r.interval.hi);
}

TEST_CASE("accuracy interval has noise only") {
  const Formula f = Formula::always(0, 5, Formula::pred(chan_pred("p", {-0.03, 0.01})));
  const ErrorReport r = accuracy_interval(f, config(Srm::SRM1, 1, 1, true));
  CHECK(r.interval == Interval{-0.01, 0.03});
}

TEST_CASE("signal-free bounds reject sample-dependent noise") {
  auto p = std::make_shared<Predicate>(Predicate::affine("p", {1.0}, 0.0).with_noise(
      [](std::span<const double> s) { return Interval{-std::abs(s[0]), std::abs(s[0])}; }));
  const Formula f = Formula::always(0, 1, Formula::pred(p));
  CHECK_THROWS_AS(error_interval_signal_free(f, config(Srm::SRM1, 1, 1, true), 1.0), ConfigError);
  CHECK_NOTHROW(error_interval_signal_free(f, config(Srm::SRM1, 1, 1, false), 1.0));
  const Signal s(std::vector<std::vector<double>>{{0.5}, {-0.2}});
  const Interval e = error_interval(f, s, config(Srm::SRM1, 1, 1, true)).interval;
  CHECK(e.lo <= -0.5);
  CHECK(e.hi >= 0.5);
}
