#include "stlsmooth/stlsmooth.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stlsmooth/error.hpp"
#include "stlsmooth/error_semantics.hpp"
#include "stlsmooth/parser.hpp"
#include "stlsmooth/problem_io.hpp"
#include "stlsmooth/semantics.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/synthesis.hpp"

using namespace stlsmooth;

struct stls_formula {
  Formula f;
};
struct stls_signal {
  Signal s;
};
struct stls_config {
  SmoothConfig cfg;
};
struct stls_problem {
  SynthesisProblem prob;
};
struct stls_result {
  std::shared_ptr<const SynthesisProblem> prob;
  SolveResult res;
  double gap = 0.0;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_line = 0, g_column = 0;

stls_status fail(stls_status code, std::string msg) {
  g_error = std::move(msg);
  return code;
}

// Maps the exception hierarchy onto status codes; most specific first.
template <typename Fn>
stls_status guard(Fn&& fn) {
  g_error.clear();
  g_line = g_column = 0;
  try {
    fn();
    return STLS_OK;
  } catch (const ParseError& e) {
    g_line = e.line();
    g_column = e.column();
    return fail(STLS_ERR_PARSE, e.what());
  } catch (const UnknownIdentifierError& e) {
    return fail(STLS_ERR_UNKNOWN_IDENTIFIER, e.what());
  } catch (const IntervalError& e) {
    return fail(STLS_ERR_INTERVAL, e.what());
  } catch (const HorizonError& e) {
    return fail(STLS_ERR_HORIZON, e.what());
  } catch (const DimensionError& e) {
    return fail(STLS_ERR_DIMENSION, e.what());
  } catch (const NumericError& e) {
    return fail(STLS_ERR_NUMERIC, e.what());
  } catch (const ConfigError& e) {
    return fail(STLS_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(STLS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(STLS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(STLS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(STLS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(STLS_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " must not be null");
}

}  // namespace

#define STLS_CHECK(ptr)                                                     \
  do {                                                                      \
    if (!(ptr)) return fail(STLS_ERR_INVALID_ARGUMENT, #ptr " is null");    \
  } while (0)

extern "C" {

uint32_t stls_abi_version(void) { return STLS_ABI_VERSION; }

const char* stls_status_name(stls_status status) {
  switch (status) {
    case STLS_OK: return "ok";
    case STLS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case STLS_ERR_PARSE: return "parse error";
    case STLS_ERR_UNKNOWN_IDENTIFIER: return "unknown identifier";
    case STLS_ERR_INTERVAL: return "malformed interval";
    case STLS_ERR_HORIZON: return "horizon violation";
    case STLS_ERR_DIMENSION: return "dimension mismatch";
    case STLS_ERR_NUMERIC: return "numeric failure";
    case STLS_ERR_CONFIG: return "invalid configuration";
    case STLS_ERR_IO: return "i/o failure";
    case STLS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* stls_last_error(void) { return g_error.c_str(); }

void stls_last_error_position(size_t* line, size_t* column) {
  if (line) *line = g_line;
  if (column) *column = g_column;
}

void stls_string_free(char* s) { std::free(s); }

stls_status stls_formula_parse(const char* text, const char* predicates_json, size_t q,
                               stls_formula** out) {
  STLS_CHECK(text);
  STLS_CHECK(out);
  return guard([&] {
    PredicateTable table = predicates_json ? parse_predicates_json(predicates_json, q)
                                           : PredicateTable(q);
    add_channel_predicates(table);
    *out = new stls_formula{to_nnf(parse(text, table))};
  });
}

stls_status stls_formula_from_problem(const stls_problem* problem, stls_formula** out) {
  STLS_CHECK(problem);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_formula{problem->prob.formula}; });
}

void stls_formula_free(stls_formula* f) { delete f; }

stls_status stls_formula_to_string(const stls_formula* f, char** out) {
  STLS_CHECK(f);
  STLS_CHECK(out);
  return guard([&] { *out = dup(to_string(f->f)); });
}

stls_status stls_formula_horizon(const stls_formula* f, int* out) {
  STLS_CHECK(f);
  STLS_CHECK(out);
  return guard([&] { *out = horizon(f->f); });
}

stls_status stls_signal_read_csv(const char* path, stls_signal** out) {
  STLS_CHECK(path);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_signal{read_signal_csv(path)}; });
}

stls_status stls_signal_parse_csv(const char* text, stls_signal** out) {
  STLS_CHECK(text);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_signal{parse_signal_csv(text)}; });
}

void stls_signal_free(stls_signal* s) { delete s; }
size_t stls_signal_length(const stls_signal* s) { return s ? s->s.length() : 0; }
size_t stls_signal_width(const stls_signal* s) { return s ? s->s.q() : 0; }

stls_status stls_config_new(stls_config** out) {
  STLS_CHECK(out);
  return guard([&] { *out = new stls_config{}; });
}

void stls_config_free(stls_config* c) { delete c; }

stls_status stls_config_set_srm(stls_config* c, int srm) {
  STLS_CHECK(c);
  if (srm < 1 || srm > 4) return fail(STLS_ERR_CONFIG, "srm must be 1..4");
  c->cfg.srm = static_cast<Srm>(srm - 1);
  return STLS_OK;
}

stls_status stls_config_set_k(stls_config* c, double k1, double k2) {
  STLS_CHECK(c);
  return guard([&] {
    SmoothConfig trial = c->cfg;
    trial.defaults = {k1, k2};
    trial.validate();
    c->cfg = trial;
  });
}

stls_status stls_config_set_noise(stls_config* c, int enabled) {
  STLS_CHECK(c);
  c->cfg.noise_enabled = enabled != 0;
  return STLS_OK;
}

stls_status stls_config_set_override(stls_config* c, const char* node, double k1, double k2) {
  STLS_CHECK(c);
  STLS_CHECK(node);
  return guard([&] {
    SmoothConfig trial = c->cfg;
    trial.overrides[node] = {k1, k2};
    trial.validate();
    c->cfg = trial;
  });
}

int stls_config_srm(const stls_config* c) { return c ? static_cast<int>(c->cfg.srm) + 1 : 0; }

stls_status stls_eval(const stls_formula* f, const stls_signal* s, const stls_config* c,
                      stls_eval_result* out) {
  STLS_CHECK(f);
  STLS_CHECK(s);
  STLS_CHECK(c);
  STLS_CHECK(out);
  return guard([&] {
    stls_eval_result r{};
    r.exact = robustness(f->f, s->s);
    r.smooth = smooth_robustness(f->f, s->s, c->cfg);
    const ErrorReport rep = error_interval(f->f, s->s, c->cfg);
    r.lo = rep.interval.lo;
    r.hi = rep.interval.hi;
    r.verdict = r.exact > 0 ? 1 : (r.exact < 0 ? -1 : 0);
    *out = r;
  });
}

stls_status stls_error_report_json(const stls_formula* f, const stls_signal* s,
                                   const stls_config* c, char** out) {
  STLS_CHECK(f);
  STLS_CHECK(s);
  STLS_CHECK(c);
  STLS_CHECK(out);
  return guard([&] { *out = dup(to_json(error_interval(f->f, s->s, c->cfg))); });
}

stls_status stls_bounds(const stls_formula* f, const stls_config* c, double range_bound,
                        double* lo, double* hi, char** report_json) {
  STLS_CHECK(f);
  STLS_CHECK(c);
  return guard([&] {
    const ErrorReport rep = error_interval_signal_free(f->f, c->cfg, range_bound);
    if (lo) *lo = rep.interval.lo;
    if (hi) *hi = rep.interval.hi;
    if (report_json) *report_json = dup(to_json(rep));
  });
}

stls_status stls_problem_load(const char* path, stls_problem** out) {
  STLS_CHECK(path);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_problem{load_problem(path)}; });
}

stls_status stls_problem_parse(const char* json, stls_problem** out) {
  STLS_CHECK(json);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_problem{parse_problem_json(json)}; });
}

stls_status stls_problem_builtin(int id, double noise, stls_problem** out) {
  STLS_CHECK(out);
  return guard([&] { *out = new stls_problem{build_scp(id, noise)}; });
}

void stls_problem_free(stls_problem* p) { delete p; }

stls_status stls_problem_config(const stls_problem* p, stls_config** out) {
  STLS_CHECK(p);
  STLS_CHECK(out);
  return guard([&] { *out = new stls_config{p->prob.smooth}; });
}

void stls_synth_options_default(stls_synth_options* o) {
  if (!o) return;
  *o = stls_synth_options{};
  const OptimizeOptions d;
  o->max_iters = d.max_iters;
  o->step_size = d.step_size;
  o->seed = 0;
  o->tune_alpha = d.tune_alpha;
}

stls_status stls_synthesize(const stls_problem* p, const stls_config* c,
                            const stls_synth_options* o, stls_result** out) {
  STLS_CHECK(p);
  STLS_CHECK(c);
  STLS_CHECK(o);
  STLS_CHECK(out);
  return guard([&] {
    OptimizeOptions opts;
    opts.max_iters = o->max_iters;
    opts.step_size = o->step_size;
    opts.seed = o->seed;
    opts.init = o->zero_init ? InitKind::Zero : InitKind::RandomUniform;
    if (o->has_stop) opts.stop_threshold = o->stop_target;
    opts.tune_every = o->tune_every;
    opts.tune_alpha = o->tune_alpha;

    auto r = std::make_unique<stls_result>();
    r->prob = std::make_shared<SynthesisProblem>(p->prob);
    const SmoothConfig& cfg = c->cfg;
    if (o->switch_period > 0) {
      SmoothConfig c2 = cfg, c3 = cfg;
      c2.srm = Srm::SRM2;
      c3.srm = Srm::SRM3;
      SwitchingResult sw = optimize_switching(*r->prob, c2, c3, o->switch_period, opts);
      r->res = std::move(sw.result);
      r->gap = sw.gap;
    } else if (o->warm_start) {
      SmoothConfig first = cfg;
      first.srm = Srm::SRM3;
      r->res = warm_start_chain(*r->prob, {{first, opts}, {cfg, opts}});
    } else {
      r->res = optimize(*r->prob, cfg, opts);
    }
    *out = r.release();
  });
}

void stls_result_free(stls_result* r) { delete r; }

stls_status stls_result_summary_get(const stls_result* r, stls_result_summary* out) {
  STLS_CHECK(r);
  STLS_CHECK(out);
  const SolveResult& s = r->res;
  *out = {s.smooth_value, s.exact_value, s.smooth_cost, s.exact_cost, s.error_interval.lo,
          s.error_interval.hi, s.iterations, s.certified ? 1 : 0, r->gap};
  return STLS_OK;
}

stls_status stls_result_json(const stls_result* r, char** out) {
  STLS_CHECK(r);
  STLS_CHECK(out);
  return guard([&] { *out = dup(result_to_json(*r->prob, r->res)); });
}

stls_status stls_result_trajectory_csv(const stls_result* r, char** out) {
  STLS_CHECK(r);
  STLS_CHECK(out);
  return guard([&] { *out = dup(trajectory_csv(*r->prob, r->res)); });
}

stls_status stls_result_trace_csv(const stls_result* r, char** out) {
  STLS_CHECK(r);
  STLS_CHECK(out);
  return guard([&] { *out = dup(trace_csv(r->res)); });
}

stls_status stls_bench(const stls_bench_options* o, const char* out_dir) {
  STLS_CHECK(o);
  STLS_CHECK(out_dir);
  return guard([&] {
    BenchOptions b;
    if (o->n_scps) {
      need(o->scps, "scps");
      b.scps.assign(o->scps, o->scps + o->n_scps);
    }
    if (o->n_srms) {
      need(o->srms, "srms");
      b.srms.clear();
      for (size_t i = 0; i < o->n_srms; ++i) {
        if (o->srms[i] < 1 || o->srms[i] > 4) throw ConfigError("srm must be 1..4");
        b.srms.push_back(static_cast<Srm>(o->srms[i] - 1));
      }
    }
    if (o->n_ks) {
      need(o->ks, "ks");
      b.ks.assign(o->ks, o->ks + o->n_ks);
    }
    if (o->realizations > 0) b.realizations = o->realizations;
    if (o->max_iters > 0) b.max_iters = o->max_iters;
    b.noise = o->noise;
    b.timing = o->timing != 0;
    write_benchmark(run_benchmark(b), out_dir, b.timing);
  });
}

stls_status stls_grad_check(const stls_problem* p, const stls_config* c, int trials,
                            uint64_t seed, stls_grad_check_report* out) {
  STLS_CHECK(p);
  STLS_CHECK(c);
  STLS_CHECK(out);
  return guard([&] {
    const GradCheckReport r = grad_check(p->prob, c->cfg, trials, seed);
    *out = {r.max_rel_error, r.max_adjoint_dense, r.explicit_ms, r.finite_diff_ms, r.trials};
  });
}

}  // extern "C"
