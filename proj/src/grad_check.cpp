#include <chrono>
#include <random>

#include "stlsmooth/error.hpp"
#include "stlsmooth/gradient.hpp"
#include "stlsmooth/synthesis.hpp"

namespace stlsmooth {

double relative_error(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vectors differ in length");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-12);
}

GradCheckReport grad_check(const SynthesisProblem& prob, const SmoothConfig& cfg, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw ConfigError("need at least one trial");
  prob.validate();
  cfg.validate();
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const auto m = static_cast<Eigen::Index>(prob.system.m());
  const Eigen::Index len = prob.T + 1;

  GradCheckReport rep;
  rep.trials = trials;
  double t_explicit = 0.0, t_fd = 0.0;
  for (int i = 0; i < trials; ++i) {
    ControlSequence u(m, len);
    for (Eigen::Index t = 0; t < len; ++t)
      for (Eigen::Index j = 0; j < m; ++j) u(j, t) = dist(rng);

    auto t0 = clock::now();
    const Vec g = grad_wrt_controls(prob.formula, prob.system, u, prob.x0, cfg);
    auto t1 = clock::now();
    const auto objective = [&](std::span<const double> flat) {
      const Eigen::Map<const ControlSequence> uu(flat.data(), m, len);
      return smooth_robustness(prob.formula, rollout(prob.system, uu, prob.x0), cfg);
    };
    const auto fd = finite_diff_grad(objective, std::span<const double>(u.data(), u.size()), 1e-6);
    auto t2 = clock::now();
    const Vec dense = grad_wrt_controls(prob.formula, prob.system, u, prob.x0, cfg, GradientPath::Dense);

    t_explicit += std::chrono::duration<double, std::milli>(t1 - t0).count();
    t_fd += std::chrono::duration<double, std::milli>(t2 - t1).count();
    const Vec fdv = Eigen::Map<const Vec>(fd.data(), static_cast<Eigen::Index>(fd.size()));
    rep.max_rel_error = std::max(rep.max_rel_error, relative_error(g, fdv));
    rep.max_adjoint_dense = std::max(rep.max_adjoint_dense, relative_error(g, dense));
  }
  rep.explicit_ms = t_explicit / trials;
  rep.finite_diff_ms = t_fd / trials;
  return rep;
}

}  // namespace stlsmooth
