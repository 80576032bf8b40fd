#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlsmooth/dynamics.hpp"
#include "stlsmooth/error_semantics.hpp"
#include "stlsmooth/formula.hpp"
#include "stlsmooth/smooth_semantics.hpp"

namespace stlsmooth {

/// Maximize smooth_robustness(formula, rollout(u)) - control_penalty |u|^2.
/// Feasibility requirements (input bounds, obstacles) live inside `formula`.
struct SynthesisProblem {
  std::string name;
  System system;
  Vec x0;
  int T = 20;
  Formula formula;
  double control_penalty = 0.01;
  /// Smooth settings the problem ships with (callers may ignore them).
  SmoothConfig smooth{};
  /// Bound on operator input spread for signal-free Soft bands.
  double range_bound = 20.0;

  /// Throws on horizon or dimension mismatch.
  void validate() const;
};

enum class InitKind { Zero, RandomUniform, Given };

struct OptimizeOptions {
  int max_iters = 500;
  double step_size = 0.05;
  std::uint64_t seed = 0;
  InitKind init = InitKind::RandomUniform;
  double init_lo = -0.1;
  double init_hi = 0.1;
  std::optional<ControlSequence> initial;  // InitKind::Given
  /// Target robustness; stop once the smooth value certifies exceeding it.
  std::optional<double> stop_threshold;
  double grad_tol = 1e-6;
  /// Retune (k1, k2) against the current signal every this many iterations.
  int tune_every = 0;
  double tune_alpha = 1e-3;
};

struct TraceRecord {
  int iter = 0;
  double smooth_rho = 0.0;
  double exact_rho = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double grad_norm = 0.0;
  double smooth_cost = 0.0;
};

struct SolveResult {
  ControlSequence u_star;
  double smooth_value = 0.0;
  double exact_value = 0.0;
  double smooth_cost = 0.0;
  double exact_cost = 0.0;
  /// Certified range of exact - smooth at u_star (signal-free for SRM1,
  /// signal-dependent otherwise).
  Interval error_interval;
  int iterations = 0;
  std::vector<TraceRecord> trace;
  std::uint64_t seed = 0;
  bool certified = false;
  std::string stop_reason;
  SmoothConfig config;
  /// Exact robustness after each warm-start stage.
  std::vector<double> stage_exact;
};

/// Error interval used for reporting: signal-free when the measure has no
/// Soft operator (SRM1), signal-dependent otherwise.
ErrorReport reported_interval(const SynthesisProblem& prob, const Signal& s,
                              const SmoothConfig& cfg);

/// Adam-style gradient ascent with step halving on overshoot. The returned
/// u_star is the iterate with the highest exact robustness unless the run
/// stopped on a certificate, in which case it is the certified iterate.
SolveResult optimize(const SynthesisProblem& prob, const SmoothConfig& cfg,
                     const OptimizeOptions& opts);

struct SwitchingResult {
  SolveResult result;  // smooth values reported under the SRM2 config
  double smooth_srm2 = 0.0;
  double smooth_srm3 = 0.0;
  /// smooth_srm3 - smooth_srm2 at u_star; the two bracket the exact value.
  double gap = 0.0;
};

/// Alternates between the two configs every `period` iterations, starting
/// with cfg_srm2.
SwitchingResult optimize_switching(const SynthesisProblem& prob, const SmoothConfig& cfg_srm2,
                                   const SmoothConfig& cfg_srm3, int period,
                                   const OptimizeOptions& opts);

struct Stage {
  SmoothConfig cfg;
  OptimizeOptions opts;
};

/// Runs stages in order, each starting from the previous u_star. Stages
/// with max_iters == 0 are skipped.
SolveResult warm_start_chain(const SynthesisProblem& prob, const std::vector<Stage>& stages);

enum class TuneMode { Global, PerNode };

/// argmin over k of width(bounds) + alpha * |theta|^2, where theta collects
/// the parameters the formula actually uses. Bounds are signal-free unless
/// `signal` is given. Never returns a worse objective than `cfg`.
SmoothConfig tune_parameters(const Formula& f, const SmoothConfig& cfg, double alpha,
                             TuneMode mode, double range_bound,
                             const Signal* signal = nullptr);

/// The tuning objective for `cfg`.
double tuning_objective(const Formula& f, const SmoothConfig& cfg, double alpha,
                        TuneMode mode, double range_bound, const Signal* signal = nullptr);

/// Benchmark problems 1-4 (single integrator, T = 20, workspace [0,10]^2).
/// `noise` > 0 attaches [-noise, noise] to every predicate.
SynthesisProblem build_scp(int id, double noise = 0.0);

struct BenchOptions {
  std::vector<int> scps{1, 2, 3, 4};
  std::vector<Srm> srms{Srm::SRM1, Srm::SRM2, Srm::SRM3, Srm::SRM4};
  std::vector<double> ks{1, 3, 5, 7, 9};
  int realizations = 50;
  int max_iters = 500;
  double noise = 0.0;
  /// Adds a wall_ms column (makes output run-dependent).
  bool timing = false;
};

struct BenchRow {
  int scp = 0;
  Srm srm = Srm::SRM1;
  double k1 = 0.0, k2 = 0.0;
  std::uint64_t seed = 0;
  double control_cost = 0.0, smooth_cost = 0.0, smooth_rho = 0.0;
  double lo = 0.0, hi = 0.0, width = 0.0;
  double exact_rho = 0.0, exact_cost = 0.0;
  int iters = 0;
  double wall_ms = 0.0;
};

std::vector<BenchRow> run_benchmark(const BenchOptions& opts);
std::string bench_runs_csv(const std::vector<BenchRow>& rows, bool timing);
std::string bench_means_csv(const std::vector<BenchRow>& rows, bool timing);
/// Writes runs.csv and means.csv into out_dir (created if missing).
void write_benchmark(const std::vector<BenchRow>& rows, const std::string& out_dir, bool timing);

struct GradCheckReport {
  /// max over trials of |explicit - finite difference|_inf / |finite difference|_inf
  double max_rel_error = 0.0;
  /// same measure between the adjoint and dense chain-rule paths
  double max_adjoint_dense = 0.0;
  /// mean wall time per gradient
  double explicit_ms = 0.0;
  double finite_diff_ms = 0.0;
  int trials = 0;
};

/// Compares control gradients of the smooth robustness at random controls
/// (uniform in [-1, 1]) against central differences with step 1e-6.
GradCheckReport grad_check(const SynthesisProblem& prob, const SmoothConfig& cfg, int trials,
                           std::uint64_t seed);

/// |a - b|_inf / max(|b|_inf, 1e-12)
double relative_error(const Vec& a, const Vec& b);

}  // namespace stlsmooth
