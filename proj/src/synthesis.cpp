#include "stlsmooth/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"
#include "stlsmooth/gradient.hpp"
#include "stlsmooth/semantics.hpp"

namespace stlsmooth {

void SynthesisProblem::validate() const {
  if (T < 0) throw ConfigError("T must be non-negative");
  if (static_cast<std::size_t>(x0.size()) != system.n()) {
    throw DimensionError("x0 has length " + std::to_string(x0.size()) + ", system state has " +
                         std::to_string(system.n()));
  }
  if (horizon(formula) > T) {
    throw HorizonError("formula horizon " + std::to_string(horizon(formula)) + " exceeds T = " +
                       std::to_string(T));
  }
  if (!(control_penalty >= 0.0)) throw ConfigError("control penalty must be non-negative");
  detail::require_nnf(formula);
}

ErrorReport reported_interval(const SynthesisProblem& prob, const Signal& s,
                              const SmoothConfig& cfg) {
  if (cfg.srm == Srm::SRM1) {
    try {
      return error_interval_signal_free(prob.formula, cfg, prob.range_bound);
    } catch (const ConfigError&) {
      // sample-dependent noise: fall through to the signal-dependent bound
    }
  }
  return error_interval(prob.formula, s, cfg);
}

namespace {

struct Point {
  ControlSequence u;
  double smooth = 0.0;
  double exact = 0.0;
  Interval err;
  double cost = 0.0;
  Vec grad;  // of the smooth cost
};

/// Evaluation context for one active configuration.
class Objective {
 public:
  Objective(const SynthesisProblem& prob, const SmoothConfig& cfg)
      : prob_(&prob), cfg_(cfg), plan_(detail::compile(prob.formula, &cfg)) {
    cfg_.validate();
    if (cfg.srm == Srm::SRM1) {
      try {
        static_err_ = error_interval_signal_free(prob.formula, cfg, prob.range_bound).interval;
      } catch (const ConfigError&) {
      }
    }
  }

  const SmoothConfig& cfg() const { return cfg_; }

  double penalty(const ControlSequence& u) const {
    return prob_->control_penalty * u.squaredNorm();
  }

  /// Smooth cost only; NaN when the rollout diverges.
  double cost(const ControlSequence& u) const {
    try {
      const Signal s = rollout(prob_->system, u, prob_->x0);
      detail::SmoothEvaluator ev(plan_, s, cfg_.srm, cfg_.noise_enabled);
      return ev.value(0, 0) - penalty(u);
    } catch (const NumericError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  Point full(const ControlSequence& u) const {
    Point p;
    p.u = u;
    const Mat states = simulate_states(prob_->system, u, prob_->x0);
    const Signal s = rollout(prob_->system, u, prob_->x0);
    detail::SmoothEvaluator ev(plan_, s, cfg_.srm, cfg_.noise_enabled);
    p.smooth = ev.value(0, 0);
    p.err = static_err_ ? *static_err_ : ev.error(0, 0);
    std::vector<double> gs(s.data().size(), 0.0);
    ev.backward(0, gs);
    const Vec gu = pull_back_to_controls(prob_->system, u, states, gs);
    const Eigen::Map<const Vec> uflat(u.data(), u.size());
    p.grad = gu - 2.0 * prob_->control_penalty * uflat;
    p.cost = p.smooth - penalty(u);
    detail::ExactEvaluator ex(plan_, s);
    p.exact = ex.value(0, 0);
    if (!std::isfinite(p.cost) || !p.grad.allFinite()) {
      throw NumericError("objective is not finite at the current controls");
    }
    return p;
  }

 private:
  const SynthesisProblem* prob_;
  SmoothConfig cfg_;
  detail::Plan plan_;
  std::optional<Interval> static_err_;
};

ControlSequence initial_controls(const SynthesisProblem& prob, const OptimizeOptions& opts) {
  const auto m = static_cast<Eigen::Index>(prob.system.m());
  const Eigen::Index len = prob.T + 1;
  switch (opts.init) {
    case InitKind::Zero:
      return ControlSequence::Zero(m, len);
    case InitKind::Given:
      if (!opts.initial) throw ConfigError("InitKind::Given needs initial controls");
      if (opts.initial->rows() != m || opts.initial->cols() != len) {
        throw DimensionError("initial controls must be m x (T+1)");
      }
      return *opts.initial;
    case InitKind::RandomUniform: {
      if (!(opts.init_lo <= opts.init_hi)) throw ConfigError("init range is empty");
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> dist(opts.init_lo, opts.init_hi);
      ControlSequence u(m, len);
      // column-major fill keeps the draw order independent of Eigen internals
      for (Eigen::Index t = 0; t < len; ++t)
        for (Eigen::Index i = 0; i < m; ++i) u(i, t) = dist(rng);
      return u;
    }
  }
  return ControlSequence::Zero(m, len);
}

TraceRecord record(int iter, const Point& p) {
  return {iter, p.smooth, p.exact, p.err.lo, p.err.hi, p.grad.norm(), p.cost};
}

/// Gradient ascent over a rotating list of configurations. `report` picks
/// the configuration used for the final smooth value and interval.
SolveResult ascend(const SynthesisProblem& prob, std::vector<SmoothConfig> cfgs, int period,
                   const OptimizeOptions& opts, std::size_t report) {
  prob.validate();
  if (!(opts.step_size > 0.0)) throw ConfigError("step size must be positive");
  if (opts.max_iters < 0) throw ConfigError("max_iters must be non-negative");
  for (const auto& c : cfgs) c.validate();

  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  constexpr int max_trials = 40;

  std::size_t active = 0;
  Objective obj(prob, cfgs[active]);
  Point cur = obj.full(initial_controls(prob, opts));

  SolveResult res;
  res.seed = opts.seed;
  res.trace.push_back(record(0, cur));
  ControlSequence best_u = cur.u;
  double best_exact = cur.exact;
  double best_pen = prob.control_penalty * cur.u.squaredNorm();

  const auto dim = cur.grad.size();
  Vec mom = Vec::Zero(dim), vel = Vec::Zero(dim);
  int adam_t = 0;
  double lr = opts.step_size;
  auto reset = [&] {
    mom.setZero();
    vel.setZero();
    adam_t = 0;
    lr = opts.step_size;
  };
  auto certified = [&](const Point& p) {
    return opts.stop_threshold && p.smooth >= opts.stop_threshold.value() - p.err.lo;
  };

  res.stop_reason = "max_iters";
  bool done = false;
  if (certified(cur)) {
    res.certified = true;
    res.stop_reason = "certified";
    done = true;
  }
  int it = 0;
  for (it = 1; !done && it <= opts.max_iters; ++it) {
    const std::size_t want = period > 0 ? static_cast<std::size_t>((it - 1) / period) % cfgs.size() : 0;
    bool refresh = false;
    if (want != active) {
      active = want;
      refresh = true;
    }
    if (opts.tune_every > 0 && it > 1 && (it - 1) % opts.tune_every == 0) {
      const Signal s = rollout(prob.system, cur.u, prob.x0);
      cfgs[active] = tune_parameters(prob.formula, cfgs[active], opts.tune_alpha, TuneMode::Global,
                                     prob.range_bound, &s);
      refresh = true;
    }
    if (refresh) {
      obj = Objective(prob, cfgs[active]);
      cur = obj.full(cur.u);
      reset();
    }
    if (cur.grad.norm() < opts.grad_tol) {
      res.stop_reason = "gradient";
      break;
    }

    ++adam_t;
    mom = beta1 * mom + (1.0 - beta1) * cur.grad;
    vel = beta2 * vel + (1.0 - beta2) * cur.grad.cwiseAbs2();
    const Vec mhat = mom / (1.0 - std::pow(beta1, adam_t));
    const Vec vhat = vel / (1.0 - std::pow(beta2, adam_t));
    const Vec adam_dir = mhat.array() / (vhat.array().sqrt() + eps);
    const Vec grad_dir = cur.grad / cur.grad.cwiseAbs().maxCoeff();

    bool accepted = false;
    ControlSequence cand;
    for (int trial = 0; trial < max_trials; ++trial) {
      // Momentum can point downhill; fall back to the raw gradient.
      const Vec& dir = trial < 4 ? adam_dir : grad_dir;
      cand = cur.u + lr * dir.reshaped(cur.u.rows(), cur.u.cols());
      const double c = obj.cost(cand);
      if (std::isfinite(c) && c >= cur.cost) {
        accepted = true;
        break;
      }
      lr *= 0.5;
    }
    if (!accepted) {
      res.stop_reason = "stalled";
      break;
    }
    cur = obj.full(cand);
    lr = std::min(opts.step_size, lr * 1.2);
    res.iterations = it;
    res.trace.push_back(record(it, cur));
    // ties (e.g. a formula the controls cannot affect) go to the cheaper input
    const double pen = prob.control_penalty * cur.u.squaredNorm();
    if (cur.exact > best_exact || (cur.exact == best_exact && pen < best_pen)) {
      best_exact = cur.exact;
      best_pen = pen;
      best_u = cur.u;
    }
    if (certified(cur)) {
      res.certified = true;
      res.stop_reason = "certified";
      break;
    }
  }

  const ControlSequence u_star = res.certified ? cur.u : best_u;
  const SmoothConfig& rcfg = cfgs[std::min(report, cfgs.size() - 1)];
  const Signal s = rollout(prob.system, u_star, prob.x0);
  res.u_star = u_star;
  res.config = rcfg;
  res.smooth_value = smooth_robustness(prob.formula, s, rcfg);
  res.exact_value = robustness(prob.formula, s);
  const double pen = prob.control_penalty * u_star.squaredNorm();
  res.smooth_cost = res.smooth_value - pen;
  res.exact_cost = res.exact_value - pen;
  res.error_interval = reported_interval(prob, s, rcfg).interval;
  res.stage_exact = {res.exact_value};
  return res;
}

}  // namespace

SolveResult optimize(const SynthesisProblem& prob, const SmoothConfig& cfg,
                     const OptimizeOptions& opts) {
  return ascend(prob, {cfg}, 0, opts, 0);
}

SwitchingResult optimize_switching(const SynthesisProblem& prob, const SmoothConfig& cfg_srm2,
                                   const SmoothConfig& cfg_srm3, int period,
                                   const OptimizeOptions& opts) {
  if (cfg_srm2.srm != Srm::SRM2 || cfg_srm3.srm != Srm::SRM3) {
    throw ConfigError("switching alternates an SRM2 config with an SRM3 config");
  }
  if (period <= 0) throw ConfigError("switching period must be positive");
  SwitchingResult out;
  out.result = ascend(prob, {cfg_srm2, cfg_srm3}, period, opts, 0);
  const Signal s = rollout(prob.system, out.result.u_star, prob.x0);
  out.smooth_srm2 = out.result.smooth_value;
  out.smooth_srm3 = smooth_robustness(prob.formula, s, cfg_srm3);
  out.gap = out.smooth_srm3 - out.smooth_srm2;
  return out;
}

SolveResult warm_start_chain(const SynthesisProblem& prob, const std::vector<Stage>& stages) {
  if (stages.empty()) throw ConfigError("warm start needs at least one stage");
  std::optional<SolveResult> prev;
  std::vector<double> per_stage;
  std::vector<TraceRecord> trace;
  int iterations = 0;
  for (const Stage& st : stages) {
    if (prev && st.opts.max_iters == 0) continue;
    OptimizeOptions opts = st.opts;
    if (prev) {
      opts.init = InitKind::Given;
      opts.initial = prev->u_star;
    }
    SolveResult r = optimize(prob, st.cfg, opts);
    iterations += r.iterations;
    trace.insert(trace.end(), r.trace.begin(), r.trace.end());
    per_stage.push_back(r.exact_value);
    prev = std::move(r);
  }
  prev->stage_exact = std::move(per_stage);
  prev->trace = std::move(trace);
  prev->iterations = iterations;
  prev->seed = stages.front().opts.seed;
  return *prev;
}

}  // namespace stlsmooth
