// Command-line front end. Talks to the library only through the C API.
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stlsmooth/stlsmooth.h"

namespace {

struct Failure {
  stls_status status;
};

void check(stls_status st) {
  if (st != STLS_OK) throw Failure{st};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  stls_string_free(s);
  return out;
}

std::string slurp_if_file(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    throw Failure{STLS_ERR_IO};
  }
}

// RAII wrappers over the opaque handles
template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using FormulaH = Handle<stls_formula, stls_formula_free>;
using SignalH = Handle<stls_signal, stls_signal_free>;
using ConfigH = Handle<stls_config, stls_config_free>;
using ProblemH = Handle<stls_problem, stls_problem_free>;
using ResultH = Handle<stls_result, stls_result_free>;

struct SmoothArgs {
  std::string srm;
  std::optional<double> k1, k2;
  std::optional<bool> noise;

  void attach(CLI::App* app) {
    app->add_option("--srm", srm, "SRM1..SRM4");
    app->add_option("--k1", k1, "smooth-min parameter");
    app->add_option("--k2", k2, "smooth-max parameter");
    app->add_flag("--noise,!--no-noise", noise, "include predicate noise in the bounds");
  }

  // Applies the flags on top of `base` (a fresh or problem config).
  void apply(stls_config* c) const {
    if (!srm.empty()) {
      std::string s = srm;
      for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      if (s.rfind("SRM", 0) == 0) s = s.substr(3);
      if (s.size() != 1 || s[0] < '1' || s[0] > '4') {
        std::fprintf(stderr, "error: --srm expects SRM1..SRM4\n");
        throw Failure{STLS_ERR_CONFIG};
      }
      check(stls_config_set_srm(c, s[0] - '0'));
    }
    if (k1 || k2) {
      // unspecified side keeps k = 3 unless given
      check(stls_config_set_k(c, k1.value_or(k2.value_or(3.0)), k2.value_or(k1.value_or(3.0))));
    }
    if (noise) check(stls_config_set_noise(c, *noise ? 1 : 0));
  }
};

struct FormulaArgs {
  std::string formula, predicates, problem;
  std::size_t q = 0;

  void attach(CLI::App* app) {
    app->add_option("--formula", formula, "formula text or a file containing it");
    app->add_option("--predicates", predicates, "JSON file with predicate definitions");
    app->add_option("--problem", problem, "problem file (supplies predicates or the formula)");
  }

  void load(FormulaH& f, ProblemH& prob, std::size_t width) const {
    if (!problem.empty()) check(stls_problem_load(problem.c_str(), prob.out()));
    if (formula.empty()) {
      if (!prob.get()) {
        std::fprintf(stderr, "error: give --formula or --problem\n");
        throw Failure{STLS_ERR_INVALID_ARGUMENT};
      }
      check(stls_formula_from_problem(prob.get(), f.out()));
      return;
    }
    std::string preds;
    if (!predicates.empty()) preds = slurp_if_file(predicates);
    check(stls_formula_parse(slurp_if_file(formula).c_str(), preds.empty() ? nullptr : preds.c_str(),
                             width, f.out()));
  }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control synthesis with smooth STL robustness"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "exact and smooth robustness of a signal");
  FormulaArgs eval_f;
  SmoothArgs eval_s;
  std::string eval_signal;
  bool eval_json = false;
  eval_f.attach(eval);
  eval_s.attach(eval);
  eval->add_option("--signal", eval_signal, "signal CSV (t,s0,...)")->required();
  eval->add_flag("--json", eval_json, "print the per-node error report");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "signal-free error bounds");
  FormulaArgs bounds_f;
  SmoothArgs bounds_s;
  double range_bound = 20.0;
  std::size_t bounds_q = 6;
  bool bounds_json = false;
  bounds_f.attach(bounds);
  bounds_s.attach(bounds);
  bounds->add_option("--range-bound", range_bound, "spread bound for Soft operator inputs");
  bounds->add_option("--q", bounds_q, "composite sample width for --formula strings");
  bounds->add_flag("--json", bounds_json, "print the per-node report");

  // synth
  auto* synth = app.add_subcommand("synth", "optimize a control sequence");
  std::string synth_problem, synth_out;
  int synth_scp = 0;
  double synth_noise = 0.0;
  SmoothArgs synth_s;
  stls_synth_options so;
  stls_synth_options_default(&so);
  std::optional<double> stop_target;
  bool warm = false, zero_init = false;
  synth->add_option("--problem", synth_problem, "problem JSON");
  synth->add_option("--scp", synth_scp, "built-in benchmark problem 1..4 instead of --problem");
  synth->add_option("--scp-noise", synth_noise, "noise half-width for --scp");
  synth_s.attach(synth);
  synth->add_option("--seed", so.seed);
  synth->add_option("--max-iters", so.max_iters);
  synth->add_option("--step", so.step_size, "initial step size");
  synth->add_option("--switch-period", so.switch_period, "alternate SRM2/SRM3 every N iterations");
  synth->add_flag("--warm-start", warm, "run SRM3 first, then the selected SRM");
  synth->add_option("--tune-every", so.tune_every, "retune k every N iterations");
  synth->add_option("--tune-alpha", so.tune_alpha);
  synth->add_option("--stop-target", stop_target, "stop once robustness > target is certified");
  synth->add_flag("--zero-init", zero_init, "start from zero controls");
  synth->add_option("--out-dir", synth_out, "write result.json, trajectory.csv, trace.csv here");

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark table over the built-in problems");
  std::string b_scp = "1,2,3,4", b_srm = "all", b_k = "1,3,5,7,9", b_out;
  int b_real = 50, b_iters = 500;
  double b_noise = 0.0;
  bool b_timing = false;
  bench->add_option("--scp", b_scp);
  bench->add_option("--srm", b_srm, "comma list of SRM1..SRM4 or 'all'");
  bench->add_option("--k", b_k, "comma list of k (k1 = k2)");
  bench->add_option("--realizations", b_real);
  bench->add_option("--max-iters", b_iters);
  bench->add_option("--noise", b_noise, "predicate noise half-width");
  bench->add_flag("--timing", b_timing, "add a wall_ms column");
  bench->add_option("--out", b_out, "output directory")->required();

  // grad-check
  auto* gc = app.add_subcommand("grad-check", "explicit gradients against finite differences");
  std::string gc_problem;
  int gc_scp = 0, gc_trials = 10;
  std::uint64_t gc_seed = 0;
  SmoothArgs gc_s;
  gc->add_option("--problem", gc_problem);
  gc->add_option("--scp", gc_scp);
  gc_s.attach(gc);
  gc->add_option("--trials", gc_trials);
  gc->add_option("--seed", gc_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      SignalH sig;
      check(stls_signal_read_csv(eval_signal.c_str(), sig.out()));
      FormulaH f;
      ProblemH prob;
      eval_f.load(f, prob, stls_signal_width(sig.get()));
      ConfigH cfg;
      if (prob.get()) check(stls_problem_config(prob.get(), cfg.out()));
      else check(stls_config_new(cfg.out()));
      eval_s.apply(cfg.get());
      stls_eval_result r;
      check(stls_eval(f.get(), sig.get(), cfg.get(), &r));
      if (eval_json) {
        char* rep = nullptr;
        check(stls_error_report_json(f.get(), sig.get(), cfg.get(), &rep));
        std::printf("%s\n", take(rep).c_str());
      } else {
        std::printf("exact  %.12g\nsmooth %.12g\nbounds [%.12g, %.12g]\ncertified [%.12g, %.12g]\n",
                    r.exact, r.smooth, r.lo, r.hi, r.smooth + r.lo, r.smooth + r.hi);
        std::printf("verdict %s\n", r.verdict > 0 ? "sat" : (r.verdict < 0 ? "unsat" : "boundary"));
      }
    } else if (*bounds) {
      FormulaH f;
      ProblemH prob;
      bounds_f.load(f, prob, bounds_q);
      ConfigH cfg;
      if (prob.get()) check(stls_problem_config(prob.get(), cfg.out()));
      else check(stls_config_new(cfg.out()));
      bounds_s.apply(cfg.get());
      double lo = 0, hi = 0;
      char* rep = nullptr;
      check(stls_bounds(f.get(), cfg.get(), range_bound, &lo, &hi, &rep));
      const std::string json = take(rep);
      if (bounds_json) std::printf("%s\n", json.c_str());
      else std::printf("L %.12g\nU %.12g\nwidth %.12g\n", lo, hi, hi - lo);
    } else if (*synth) {
      ProblemH prob;
      if (synth_scp > 0) check(stls_problem_builtin(synth_scp, synth_noise, prob.out()));
      else if (!synth_problem.empty()) check(stls_problem_load(synth_problem.c_str(), prob.out()));
      else {
        std::fprintf(stderr, "error: give --problem or --scp\n");
        return 2;
      }
      ConfigH cfg;
      check(stls_problem_config(prob.get(), cfg.out()));
      synth_s.apply(cfg.get());
      so.warm_start = warm ? 1 : 0;
      so.zero_init = zero_init ? 1 : 0;
      so.has_stop = stop_target ? 1 : 0;
      so.stop_target = stop_target.value_or(0.0);
      ResultH res;
      check(stls_synthesize(prob.get(), cfg.get(), &so, res.out()));
      char *json = nullptr, *traj = nullptr, *trace = nullptr;
      check(stls_result_json(res.get(), &json));
      const std::string js = take(json);
      if (synth_out.empty()) {
        std::printf("%s\n", js.c_str());
      } else {
        check(stls_result_trajectory_csv(res.get(), &traj));
        const std::string tj = take(traj);
        check(stls_result_trace_csv(res.get(), &trace));
        const std::string tr = take(trace);
        std::filesystem::create_directories(synth_out);
        const std::filesystem::path dir(synth_out);
        write_text((dir / "result.json").string(), js + "\n");
        write_text((dir / "trajectory.csv").string(), tj);
        write_text((dir / "trace.csv").string(), tr);
        stls_result_summary s;
        check(stls_result_summary_get(res.get(), &s));
        std::printf("exact %.12g smooth %.12g bounds [%.12g, %.12g] iterations %d%s\n", s.exact_value,
                    s.smooth_value, s.lo, s.hi, s.iterations, s.certified ? " certified" : "");
        if (so.switch_period > 0) std::printf("gap %.12g\n", s.gap);
      }
    } else if (*bench) {
      std::vector<int> scps, srms;
      std::vector<double> ks;
      for (const auto& s : split(b_scp)) scps.push_back(std::stoi(s));
      if (b_srm == "all") {
        srms = {1, 2, 3, 4};
      } else {
        for (auto s : split(b_srm)) {
          if (s.size() > 3) s = s.substr(s.size() - 1);
          srms.push_back(std::stoi(s));
        }
      }
      for (const auto& s : split(b_k)) ks.push_back(std::stod(s));
      stls_bench_options o{scps.data(), scps.size(), srms.data(), srms.size(), ks.data(), ks.size(),
                           b_real, b_iters, b_noise, b_timing ? 1 : 0};
      check(stls_bench(&o, b_out.c_str()));
      std::printf("wrote %s/runs.csv and %s/means.csv\n", b_out.c_str(), b_out.c_str());
    } else if (*gc) {
      ProblemH prob;
      if (gc_scp > 0) check(stls_problem_builtin(gc_scp, 0.0, prob.out()));
      else if (!gc_problem.empty()) check(stls_problem_load(gc_problem.c_str(), prob.out()));
      else {
        std::fprintf(stderr, "error: give --problem or --scp\n");
        return 2;
      }
      ConfigH cfg;
      check(stls_problem_config(prob.get(), cfg.out()));
      gc_s.apply(cfg.get());
      stls_grad_check_report r;
      check(stls_grad_check(prob.get(), cfg.get(), gc_trials, gc_seed, &r));
      std::printf("trials %d\nmax_rel_error %.3e\nmax_adjoint_vs_dense %.3e\n", r.trials,
                  r.max_rel_error, r.max_adjoint_dense);
      std::printf("explicit_ms %.4f\nfinite_diff_ms %.4f\ntime_ratio %.4f\n", r.explicit_ms,
                  r.finite_diff_ms, r.finite_diff_ms > 0 ? r.explicit_ms / r.finite_diff_ms : 0.0);
    }
  } catch (const Failure& f) {
    const char* msg = stls_last_error();
    std::fprintf(stderr, "error (%s): %s\n", stls_status_name(f.status), msg);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
