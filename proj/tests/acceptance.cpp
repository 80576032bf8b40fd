// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// below; runtimes are wall-clock on a single core.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "stlsmooth/error_semantics.hpp"
#include "stlsmooth/gradient.hpp"
#include "stlsmooth/semantics.hpp"
#include "stlsmooth/synthesis.hpp"
#include "support.hpp"

using namespace stlsmooth;

namespace {

constexpr double kSlack = 1e-9;
constexpr double kScaleTol = 1e-12;
constexpr double kFdTol = 1e-5;
constexpr double kAdjDenseTol = 1e-10;
constexpr double kSpeedRatio = 0.2;
constexpr double kFeasibleRate = 0.8;
constexpr double kWarmRate = 0.9;
constexpr double kNoise = 0.01;

int failures = 0;

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SmoothConfig config(Srm srm, double k1, double k2, bool noise = false) {
  SmoothConfig c;
  c.srm = srm;
  c.defaults = {k1, k2};
  c.noise_enabled = noise;
  return c;
}

const Srm kSrms[] = {Srm::SRM1, Srm::SRM2, Srm::SRM3, Srm::SRM4};
const OpKind kKinds[] = {OpKind::QuasiMin, OpKind::QuasiMax, OpKind::SoftMin, OpKind::SoftMax};

void bands() {
  Clock clock;
  oracle::Generator gen(101, 1);
  long checks = 0, bad_tight = 0, bad_free = 0, bad_nest = 0;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> a(static_cast<std::size_t>(gen.pick(1, 20)));
    const double scale = std::pow(10.0, gen.uni(-2, 1.5));
    for (auto& v : a) v = gen.uni(-scale, scale);
    if (a.size() > 2 && gen.pick(0, 3) == 0) a[1] = a[0];  // ties
    const auto [mn, mx] = std::minmax_element(a.begin(), a.end());
    const SoftRange range{*mx - *mn, 0.0};
    for (OpKind kind : kKinds) {
      const double ex = approximates_min(kind) ? *mn : *mx;
      for (double k : {0.5, 1.0, 3.0, 10.0}) {
        const double e = ex - smooth_op(kind, a, k);
        const Interval t = op_error_band(kind, a, k, BandMode::Tight);
        const Interval f = op_error_band(kind, a, k, BandMode::ValueFree, range);
        const Interval f2 = op_error_band_value_free(kind, a.size(), k, range);
        ++checks;
        if (!t.contains(e, kSlack)) ++bad_tight;
        if (!f.contains(e, kSlack) || !f2.contains(e, kSlack)) ++bad_free;
        if (!t.subset_of(f, kSlack)) ++bad_nest;
        worst = std::max({worst, t.lo - e, e - t.hi});
      }
    }
  }
  const double sec = clock.seconds();
  report(1, "operator band suite", bad_tight + bad_free + bad_nest == 0 && sec < 5.0,
         fmt("%ld checks, outside tight %ld, outside value-free %ld, tight not nested %ld, "
             "worst excess %.2e, %.2fs (limit 5s)",
             checks, bad_tight, bad_free, bad_nest, worst, sec));
}

struct Case {
  Formula f;
  Signal s;
  int srm;
  bool noisy;
};

// Shared randomized suite for containment and one-sidedness.
template <class Fn>
void suite(std::uint64_t seed, bool allow_noise, Fn&& fn) {
  for (int i = 0; i < 10000; ++i) {
    oracle::Generator gen(seed + static_cast<std::uint64_t>(i), 3);
    const bool noisy = allow_noise && gen.pick(0, 1) == 1;
    if (noisy) gen.set_noise({-kNoise, kNoise});
    Formula f = gen.nnf(gen.pick(1, 4));
    const int h = horizon(f);
    if (h > 25) {
      --i;
      seed += 7919;
      continue;
    }
    const int T = std::min(25, h + gen.pick(0, 5));
    fn(Case{f, gen.signal(T), gen.pick(0, 3), noisy}, gen);
  }
}

void containment() {
  Clock clock;
  long cases = 0, bad_dep = 0, bad_free = 0, noisy = 0, untils = 0, max_h = 0;
  double worst = 0.0;
  suite(5000, true, [&](const Case& c, oracle::Generator& gen) {
    untils += to_string(c.f).find(" U[") != std::string::npos;
    max_h = std::max<long>(max_h, horizon(c.f));
    const double k1 = std::pow(10.0, gen.uni(-0.5, 1.0)), k2 = std::pow(10.0, gen.uni(-0.5, 1.0));
    const SmoothConfig cfg = config(kSrms[c.srm], k1, k2, c.noisy);
    // a noise realization inside the declared band shifts the true value
    std::map<std::pair<const void*, int>, double> draws;
    const oracle::Perturb shift = [&](const Formula& leaf, int t) {
      auto [it, fresh] = draws.try_emplace({leaf.predicate().get(), t}, 0.0);
      if (fresh) {
        const int pick = gen.pick(0, 2);
        it->second = pick == 0 ? -kNoise : pick == 1 ? kNoise : gen.uni(-kNoise, kNoise);
      }
      return it->second;
    };
    const double truth = oracle::exact(c.f, c.s, 0, c.noisy ? &shift : nullptr);
    const double e = truth - smooth_robustness(c.f, c.s, cfg);
    const Interval dep = error_interval(c.f, c.s, cfg).interval;
    const double range = operator_input_range(c.f, c.s, cfg).width();
    const Interval sf = error_interval_signal_free(c.f, cfg, range).interval;
    ++cases;
    noisy += c.noisy;
    if (!dep.contains(e, kSlack)) ++bad_dep;
    if (!sf.contains(e, kSlack)) ++bad_free;
    worst = std::max({worst, dep.lo - e, e - dep.hi});
  });
  const double sec = clock.seconds();
  report(2, "error interval containment", bad_dep + bad_free == 0 && sec < 60.0,
         fmt("%ld cases (%ld noisy, %ld with until, max horizon %ld), outside signal-dependent %ld, "
             "outside signal-free %ld, worst excess %.2e, %.2fs (limit 60s)",
             cases, noisy, untils, max_h, bad_dep, bad_free, worst, sec));
}

void one_sided() {
  long srm2 = 0, srm3 = 0, bad2 = 0, bad3 = 0;
  suite(5000, false, [&](const Case& c, oracle::Generator& gen) {
    const double k1 = std::pow(10.0, gen.uni(-0.5, 1.0)), k2 = std::pow(10.0, gen.uni(-0.5, 1.0));
    const double rho = robustness(c.f, c.s);
    ++srm2;
    if (smooth_robustness(c.f, c.s, config(Srm::SRM2, k1, k2)) > rho) ++bad2;
    ++srm3;
    if (smooth_robustness(c.f, c.s, config(Srm::SRM3, k1, k2)) < rho) ++bad3;
  });
  report(3, "SRM2 under / SRM3 over the exact value", bad2 + bad3 == 0,
         fmt("SRM2 violations %ld/%ld, SRM3 violations %ld/%ld", bad2, srm2, bad3, srm3));
}

void width_scaling() {
  bool ok = true;
  double worst = 0.0;
  std::string widths;
  for (int id = 1; id <= 4; ++id) {
    const SynthesisProblem prob = build_scp(id);
    double w1 = 0.0, prev = INFINITY;
    widths += fmt("SCP%d", id);
    for (double k : {1.0, 3.0, 5.0, 7.0, 9.0}) {
      const double w = error_interval_signal_free(prob.formula, config(Srm::SRM1, k, k), prob.range_bound).width;
      if (k == 1.0) w1 = w;
      const double r = std::abs(w * k - w1) / w1;
      worst = std::max(worst, r);
      ok = ok && r <= kScaleTol && w < prev;
      prev = w;
      widths += fmt(" %.5g", w);
    }
    widths += id < 4 ? "; " : "";
  }
  report(4, "SRM1 signal-free width scales as 1/k", ok,
         fmt("max |k w(k) - w(1)|/w(1) = %.2e (tol %.0e); widths %s", worst, kScaleTol, widths.c_str()));
}

void gradients() {
  Clock clock;
  double worst_fd = 0.0, worst_ad = 0.0;
  int problems = 0;
  const double ks[] = {1, 3, 5, 7, 9};
  for (int i = 0; i < 500; ++i) {
    oracle::Generator gen(90000 + static_cast<std::uint64_t>(i), 1);
    const int n = gen.pick(1, 3), m = gen.pick(1, 2), p = gen.pick(1, 2);
    std::srand(static_cast<unsigned>(i + 1));
    Mat A = Mat::Random(n, n) * 0.4 + Mat::Identity(n, n) * 0.6;
    const System sys = linear_system(A, Mat::Random(n, m), Mat::Random(p, n), Mat::Random(p, m));
    oracle::Generator fg(70000 + static_cast<std::uint64_t>(i), static_cast<std::size_t>(n + m + p));
    Formula f = fg.nnf(fg.pick(1, 4));
    while (horizon(f) > 20) f = fg.nnf(fg.pick(1, 3));
    SynthesisProblem prob{"random", sys, Vec::Random(n), 20, f};
    const double k = ks[i % 5];
    const GradCheckReport r = grad_check(prob, config(kSrms[(i / 5) % 4], k, k), 1, static_cast<std::uint64_t>(i));
    worst_fd = std::max(worst_fd, r.max_rel_error);
    worst_ad = std::max(worst_ad, r.max_adjoint_dense);
    ++problems;
  }
  const double sec = clock.seconds();
  report(5, "control gradients vs finite differences",
         worst_fd <= kFdTol && worst_ad <= kAdjDenseTol && sec < 120.0,
         fmt("%d problems, max rel err vs differences %.2e (tol %.0e), adjoint vs dense %.2e "
             "(tol %.0e), %.2fs (limit 120s)",
             problems, worst_fd, kFdTol, worst_ad, kAdjDenseTol, sec));
}

void gradient_speed() {
  const SynthesisProblem prob = build_scp(3);
  const GradCheckReport r = grad_check(prob, config(Srm::SRM3, 3, 3), 100, 17);
  const double ratio = r.explicit_ms / r.finite_diff_ms;
  report(6, "explicit gradient faster than differences", ratio <= kSpeedRatio,
         fmt("mean explicit %.4f ms, differences %.4f ms over %d evaluations, ratio %.4f (limit %.2f)",
             r.explicit_ms, r.finite_diff_ms, r.trials, ratio, kSpeedRatio));
}

void feasibility() {
  Clock clock;
  bool ok = true;
  std::string detail;
  for (int id : {1, 3}) {
    const SynthesisProblem prob = build_scp(id);
    int sat = 0;
    double mean = 0.0;
    for (int seed = 0; seed < 50; ++seed) {
      OptimizeOptions o;
      o.max_iters = 500;
      o.seed = static_cast<std::uint64_t>(seed);
      const SolveResult r = optimize(prob, config(Srm::SRM3, 3, 3), o);
      sat += r.exact_value > 0.0;
      mean += r.exact_value / 50;
    }
    ok = ok && sat >= kFeasibleRate * 50;
    detail += fmt("SCP%d %d/50 positive (mean rho %.4f); ", id, sat, mean);
  }
  const double sec = clock.seconds();
  ok = ok && sec < 600.0;
  report(7, "synthesis feasibility, SRM3 k=3", ok,
         detail + fmt("need >= %.0f%%, %.1fs (limit 600s)", 100 * kFeasibleRate, sec));
}

void noise_floor() {
  bool ok = true;
  std::string detail;
  for (int id = 1; id <= 4; ++id) {
    const SynthesisProblem prob = build_scp(id, kNoise);
    SmoothConfig c2 = config(Srm::SRM2, 3, 3, true), c3 = config(Srm::SRM3, 3, 3, true);
    const Interval f2 = error_interval_signal_free(prob.formula, c2, prob.range_bound).interval;
    const Interval f3 = error_interval_signal_free(prob.formula, c3, prob.range_bound).interval;
    bool id_ok = f2.lo == -kNoise && f3.hi == kNoise;
    std::srand(static_cast<unsigned>(id));
    for (int i = 0; i < 10; ++i) {
      const Signal s = rollout(prob.system, ControlSequence::Random(2, 21), prob.x0);
      id_ok = id_ok && error_interval(prob.formula, s, c2).interval.lo == -kNoise &&
              error_interval(prob.formula, s, c3).interval.hi == kNoise;
    }
    ok = ok && id_ok;
    detail += fmt("SCP%d SRM2 L=%.17g SRM3 U=%.17g%s; ", id, f2.lo, f3.hi, id_ok ? "" : " (mismatch)");
  }
  report(8, "noise floor of the one-sided measures", ok,
         detail + "signal-free and 10 signal-dependent checks each, exact equality");
}

void certified_stop() {
  int runs = 0, reached = 0, certified = 0, above = 0, missed = 0, iters = 0;
  for (int id = 1; id <= 4; ++id) {
    const SynthesisProblem prob = build_scp(id, kNoise);
    for (int seed = 0; seed < 25; ++seed) {
      OptimizeOptions o;
      o.seed = static_cast<std::uint64_t>(seed);
      o.stop_threshold = -1.0;
      const SolveResult r = optimize(prob, config(Srm::SRM2, 3, 3, true), o);
      ++runs;
      bool hit = false;
      for (const auto& t : r.trace) hit = hit || t.smooth_rho >= -0.99;
      reached += hit;
      certified += r.certified;
      iters += r.iterations;
      if (hit && !r.certified) ++missed;
      const double post = robustness(prob.formula, rollout(prob.system, r.u_star, prob.x0));
      if (r.certified && post > -1.0) ++above;
    }
  }
  report(9, "certified early termination, target -1, SRM2", missed == 0 && above == certified && certified > 0,
         fmt("%d runs, %d reached smooth >= -0.99, %d certified, %d uncertified after reaching, "
             "%d/%d certified runs with exact rho > -1, mean %.1f iterations",
             runs, reached, certified, missed, above, certified, double(iters) / runs));
}

void warm_start() {
  bool ok = true;
  std::string detail;
  for (int id = 1; id <= 4; ++id) {
    const SynthesisProblem prob = build_scp(id);
    int fine = 0;
    double gain = 0.0;
    for (int seed = 0; seed < 50; ++seed) {
      OptimizeOptions o;
      o.seed = static_cast<std::uint64_t>(seed);
      const SolveResult alone = optimize(prob, config(Srm::SRM3, 3, 3), o);
      const SolveResult chain = warm_start_chain(prob, {{config(Srm::SRM3, 3, 3), o}, {config(Srm::SRM1, 3, 3), o}});
      fine += chain.exact_value >= alone.exact_value - 1e-9;
      gain += (chain.exact_value - alone.exact_value) / 50;
    }
    ok = ok && fine >= kWarmRate * 50;
    detail += fmt("SCP%d %d/50 (mean gain %.4f); ", id, fine, gain);
  }
  report(10, "SRM3 -> SRM1 warm start does not regress", ok,
         detail + fmt("need >= %.0f%%", 100 * kWarmRate));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  BenchOptions b;
  b.realizations = 2;
  b.max_iters = 100;
  const auto root = std::filesystem::temp_directory_path() / "stlsmooth_acceptance";
  std::filesystem::remove_all(root);
  write_benchmark(run_benchmark(b), (root / "a").string(), false);
  write_benchmark(run_benchmark(b), (root / "b").string(), false);
  bool same = true;
  std::size_t bytes = 0;
  for (const char* name : {"runs.csv", "means.csv"}) {
    const std::string x = slurp(root / "a" / name), y = slurp(root / "b" / name);
    same = same && !x.empty() && x == y;
    bytes += x.size();
  }
  std::filesystem::remove_all(root);
  report(11, "benchmark output is byte-identical across runs", same,
         fmt("4 SCPs x 4 SRMs x 5 k x 2 seeds, %zu bytes compared", bytes));
}

}  // namespace

int main() {
  bands();
  containment();
  one_sided();
  width_scaling();
  gradients();
  gradient_speed();
  feasibility();
  noise_floor();
  certified_stop();
  warm_start();
  determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
