#include "stlsmooth/smooth_semantics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"

namespace stlsmooth {

std::string_view to_string(Srm srm) {
  switch (srm) {
    case Srm::SRM1: return "SRM1";
    case Srm::SRM2: return "SRM2";
    case Srm::SRM3: return "SRM3";
    case Srm::SRM4: return "SRM4";
  }
  return "?";
}

Srm parse_srm(std::string_view text) {
  std::string t(text);
  for (char& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t.rfind("SRM", 0) == 0) t = t.substr(3);
  if (t == "1") return Srm::SRM1;
  if (t == "2") return Srm::SRM2;
  if (t == "3") return Srm::SRM3;
  if (t == "4") return Srm::SRM4;
  throw ConfigError("unknown smooth robustness measure '" + std::string(text) +
                    "' (expected SRM1..SRM4)");
}

OpKind min_operator(Srm srm) {
  return srm == Srm::SRM1 || srm == Srm::SRM2 ? OpKind::QuasiMin : OpKind::SoftMin;
}

OpKind max_operator(Srm srm) {
  return srm == Srm::SRM1 || srm == Srm::SRM3 ? OpKind::QuasiMax : OpKind::SoftMax;
}

SmoothParams SmoothConfig::params_at(const std::string& node_id, const Formula& node) const {
  if (auto it = overrides.find(node_id); it != overrides.end()) return it->second;
  if (node.local_params()) return *node.local_params();
  return defaults;
}

namespace {

void check_params(const SmoothParams& p, const std::string& where) {
  auto ok = [](double k) { return std::isfinite(k) && k > 0.0; };
  if (!ok(p.k1) || !ok(p.k2)) {
    throw ConfigError("smooth parameters " + where + " must be positive and finite (k1 = " +
                      std::to_string(p.k1) + ", k2 = " + std::to_string(p.k2) + ")");
  }
}

}  // namespace

void SmoothConfig::validate() const {
  check_params(defaults, "defaults");
  for (const auto& [id, p] : overrides) check_params(p, "at node " + id);
}

std::string_view to_string(Soundness s) {
  switch (s) {
    case Soundness::Sound: return "sound";
    case Soundness::ReverseSound: return "reverse-sound";
    case Soundness::AsymptoticOnly: return "asymptotic-only";
  }
  return "?";
}

Soundness classify(const SmoothConfig& cfg) {
  if (cfg.noise_enabled) return Soundness::AsymptoticOnly;
  switch (cfg.srm) {
    case Srm::SRM2: return Soundness::Sound;
    case Srm::SRM3: return Soundness::ReverseSound;
    default: return Soundness::AsymptoticOnly;
  }
}

namespace detail {

SmoothEvaluator::SmoothEvaluator(const Plan& plan, const Signal& s, Srm srm, bool noise_enabled)
    : plan_(plan),
      s_(s),
      min_op_(min_operator(srm)),
      max_op_(max_operator(srm)),
      noise_(noise_enabled),
      values_(plan.nodes.size(), s.length()),
      errors_(plan.nodes.size(), s.length()) {}

void SmoothEvaluator::note_inputs(const std::vector<double>& a) {
  for (double v : a) {
    range_.lo = std::min(range_.lo, v);
    range_.hi = std::max(range_.hi, v);
  }
}

std::vector<double> SmoothEvaluator::child_values(int kid, int from, int to) {
  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(to - from + 1));
  for (int tau = from; tau <= to; ++tau) a.push_back(value(kid, tau));
  return a;
}

double SmoothEvaluator::value(int node, int t) {
  if (values_.has(node, t)) return values_.get(node, t);
  const PlanNode& n = plan_.nodes[static_cast<std::size_t>(node)];
  double r = 0.0;
  switch (n.kind) {
    case FormulaKind::Predicate:
      r = n.pred->value(s_.sample(t));
      break;
    case FormulaKind::Not:
      r = -value(n.kids[0], t);
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<double> a;
      for (int k : n.kids) a.push_back(value(k, t));
      note_inputs(a);
      r = n.kind == FormulaKind::And ? smooth_op(min_op_, a, n.params.k1)
                                     : smooth_op(max_op_, a, n.params.k2);
      break;
    }
    case FormulaKind::Always:
    case FormulaKind::Eventually: {
      const auto a = child_values(n.kids[0], t + n.t1, t + n.t2);
      note_inputs(a);
      r = n.kind == FormulaKind::Always ? smooth_op(min_op_, a, n.params.k1)
                                        : smooth_op(max_op_, a, n.params.k2);
      break;
    }
    case FormulaKind::Until: {
      std::vector<double> outer;
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) {
        const auto run = child_values(n.kids[1], t + n.t1, tau);
        note_inputs(run);
        const std::vector<double> pair{value(n.kids[0], tau), smooth_op(min_op_, run, n.params.k1)};
        note_inputs(pair);
        outer.push_back(smooth_op(min_op_, pair, n.params.k1));
      }
      note_inputs(outer);
      r = smooth_op(max_op_, outer, n.params.k2);
      break;
    }
  }
  values_.set(node, t, r);
  return r;
}

Interval SmoothEvaluator::error(int node, int t) {
  if (errors_.has(node, t)) return errors_.get(node, t);
  const PlanNode& n = plan_.nodes[static_cast<std::size_t>(node)];
  Interval e;
  auto stack = [](const Interval& band, Interval acc) { return band + acc; };
  auto combine = [&](OpKind op, double k, const std::vector<int>& kids, const std::vector<int>& times) {
    std::vector<double> a;
    Interval acc{INFINITY, -INFINITY};
    for (std::size_t i = 0; i < kids.size(); ++i) {
      a.push_back(value(kids[i], times[i]));
      acc = hull(acc, error(kids[i], times[i]));
    }
    return stack(op_error_band(op, a, k, BandMode::Tight), acc);
  };
  switch (n.kind) {
    case FormulaKind::Predicate:
      if (noise_) {
        const Interval w = n.pred->noise(s_.sample(t));
        e = {-w.hi, -w.lo};
      }
      break;
    case FormulaKind::Not: {
      const Interval c = error(n.kids[0], t);
      e = {-c.hi, -c.lo};
      break;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const std::vector<int> times(n.kids.size(), t);
      e = n.kind == FormulaKind::And ? combine(min_op_, n.params.k1, n.kids, times)
                                     : combine(max_op_, n.params.k2, n.kids, times);
      break;
    }
    case FormulaKind::Always:
    case FormulaKind::Eventually: {
      std::vector<int> kids, times;
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) {
        kids.push_back(n.kids[0]);
        times.push_back(tau);
      }
      e = n.kind == FormulaKind::Always ? combine(min_op_, n.params.k1, kids, times)
                                        : combine(max_op_, n.params.k2, kids, times);
      break;
    }
    case FormulaKind::Until: {
      std::vector<double> outer;
      Interval outer_acc{INFINITY, -INFINITY};
      std::vector<double> run;
      Interval run_acc{INFINITY, -INFINITY};
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) {
        run.push_back(value(n.kids[1], tau));
        run_acc = hull(run_acc, error(n.kids[1], tau));
        const double phi3 = smooth_op(min_op_, run, n.params.k1);
        const Interval e3 = stack(op_error_band(min_op_, run, n.params.k1, BandMode::Tight), run_acc);
        const std::vector<double> pair{value(n.kids[0], tau), phi3};
        const Interval e4 = stack(op_error_band(min_op_, pair, n.params.k1, BandMode::Tight),
                                  hull(error(n.kids[0], tau), e3));
        outer.push_back(smooth_op(min_op_, pair, n.params.k1));
        outer_acc = hull(outer_acc, e4);
      }
      e = stack(op_error_band(max_op_, outer, n.params.k2, BandMode::Tight), outer_acc);
      break;
    }
  }
  errors_.set(node, t, e);
  return e;
}

void SmoothEvaluator::backward(int t, std::vector<double>& grad) {
  const std::size_t len = s_.length();
  const std::size_t q = s_.q();
  if (grad.size() != len * q) throw DimensionError("gradient buffer has the wrong length");
  value(0, t);
  std::vector<double> adj(plan_.nodes.size() * len, 0.0);
  auto at = [&](int node, int tau) -> double& {
    return adj[static_cast<std::size_t>(node) * len + static_cast<std::size_t>(tau)];
  };
  at(0, t) = 1.0;
  std::vector<double> w, w_pair, w_run;
  // Preorder: every parent is finished before its children are visited.
  for (std::size_t i = 0; i < plan_.nodes.size(); ++i) {
    const PlanNode& n = plan_.nodes[i];
    const int node = static_cast<int>(i);
    for (int tt = 0; tt < static_cast<int>(len); ++tt) {
      const double a = at(node, tt);
      if (a == 0.0) continue;
      switch (n.kind) {
        case FormulaKind::Predicate: {
          std::span<double> block(grad.data() + static_cast<std::size_t>(tt) * q, q);
          n.pred->accumulate_gradient(s_.sample(tt), a, block);
          break;
        }
        case FormulaKind::Not:
          at(n.kids[0], tt) -= a;
          break;
        case FormulaKind::And:
        case FormulaKind::Or: {
          std::vector<double> v;
          for (int k : n.kids) v.push_back(value(k, tt));
          w.assign(v.size(), 0.0);
          if (n.kind == FormulaKind::And) smooth_op_with_grad(min_op_, v, n.params.k1, w);
          else smooth_op_with_grad(max_op_, v, n.params.k2, w);
          for (std::size_t c = 0; c < n.kids.size(); ++c) at(n.kids[c], tt) += a * w[c];
          break;
        }
        case FormulaKind::Always:
        case FormulaKind::Eventually: {
          const auto v = child_values(n.kids[0], tt + n.t1, tt + n.t2);
          w.assign(v.size(), 0.0);
          if (n.kind == FormulaKind::Always) smooth_op_with_grad(min_op_, v, n.params.k1, w);
          else smooth_op_with_grad(max_op_, v, n.params.k2, w);
          for (std::size_t j = 0; j < v.size(); ++j) at(n.kids[0], tt + n.t1 + static_cast<int>(j)) += a * w[j];
          break;
        }
        case FormulaKind::Until: {
          const int lo = tt + n.t1;
          std::vector<double> outer;
          std::vector<std::vector<double>> runs, pairs;
          for (int tau = lo; tau <= tt + n.t2; ++tau) {
            runs.push_back(child_values(n.kids[1], lo, tau));
            pairs.push_back({value(n.kids[0], tau), smooth_op(min_op_, runs.back(), n.params.k1)});
            outer.push_back(smooth_op(min_op_, pairs.back(), n.params.k1));
          }
          w.assign(outer.size(), 0.0);
          smooth_op_with_grad(max_op_, outer, n.params.k2, w);
          for (std::size_t j = 0; j < outer.size(); ++j) {
            const int tau = lo + static_cast<int>(j);
            const double g4 = a * w[j];
            w_pair.assign(2, 0.0);
            smooth_op_with_grad(min_op_, pairs[j], n.params.k1, w_pair);
            at(n.kids[0], tau) += g4 * w_pair[0];
            const double g3 = g4 * w_pair[1];
            w_run.assign(runs[j].size(), 0.0);
            smooth_op_with_grad(min_op_, runs[j], n.params.k1, w_run);
            for (std::size_t d = 0; d < runs[j].size(); ++d) at(n.kids[1], lo + static_cast<int>(d)) += g3 * w_run[d];
          }
          break;
        }
      }
    }
  }
}

}  // namespace detail

double smooth_robustness(const Formula& f, const Signal& s, const SmoothConfig& cfg, int t) {
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  detail::check_horizon(plan, s, t);
  detail::SmoothEvaluator ev(plan, s, cfg.srm, cfg.noise_enabled);
  return ev.value(0, t);
}

Interval operator_input_range(const Formula& f, const Signal& s, const SmoothConfig& cfg) {
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  detail::check_horizon(plan, s, 0);
  detail::SmoothEvaluator ev(plan, s, cfg.srm, cfg.noise_enabled);
  ev.value(0, 0);
  const Interval r = ev.input_range();
  return r.lo <= r.hi ? r : Interval{0.0, 0.0};
}

}  // namespace stlsmooth
