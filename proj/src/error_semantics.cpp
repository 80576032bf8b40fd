#include "stlsmooth/error_semantics.hpp"

#include <cmath>
#include "json.hpp"

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"

namespace stlsmooth {
namespace {

ErrorReport finish(Interval root, std::map<std::string, Interval> per_node) {
  ErrorReport r;
  r.interval = root;
  r.per_node = std::move(per_node);
  r.width = root.width();
  return r;
}

enum class BandSource { ValueFree, Zero };

/// Bottom-up propagation where every node's interval is the same at all
/// times, so one pass over the plan (children after parents) suffices.
class StaticPropagator {
 public:
  StaticPropagator(const detail::Plan& plan, const SmoothConfig& cfg, BandSource source,
                   double range_bound)
      : plan_(plan),
        cfg_(cfg),
        source_(source),
        soft_{range_bound, 0.0},
        min_op_(min_operator(cfg.srm)),
        max_op_(max_operator(cfg.srm)),
        out_(plan.nodes.size()) {}

  std::vector<Interval> run() {
    for (std::size_t i = plan_.nodes.size(); i-- > 0;) out_[i] = node(plan_.nodes[i]);
    return out_;
  }

 private:
  Interval band(OpKind op, std::size_t m, double k) const {
    if (source_ == BandSource::Zero) return {0.0, 0.0};
    return op_error_band_value_free(op, m, k, soft_);
  }

  Interval kid(int i) const { return out_[static_cast<std::size_t>(i)]; }

  Interval node(const detail::PlanNode& n) const {
    const auto window = static_cast<std::size_t>(n.t2 - n.t1 + 1);
    switch (n.kind) {
      case FormulaKind::Predicate: {
        if (!cfg_.noise_enabled) return {0.0, 0.0};
        if (!n.pred->has_constant_noise()) {
          throw ConfigError("predicate '" + n.pred->name() +
                            "' has sample-dependent noise; signal-free bounds need constants");
        }
        const Interval w = n.pred->constant_noise();
        return {-w.hi, -w.lo};
      }
      case FormulaKind::Not: {
        const Interval c = kid(n.kids[0]);
        return {-c.hi, -c.lo};
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        Interval acc{INFINITY, -INFINITY};
        for (int k : n.kids) acc = hull(acc, kid(k));
        return (n.kind == FormulaKind::And ? band(min_op_, n.kids.size(), n.params.k1)
                                           : band(max_op_, n.kids.size(), n.params.k2)) + acc;
      }
      case FormulaKind::Always:
        return band(min_op_, window, n.params.k1) + kid(n.kids[0]);
      case FormulaKind::Eventually:
        return band(max_op_, window, n.params.k2) + kid(n.kids[0]);
      case FormulaKind::Until: {
        // Every prefix length j of the running min occurs for some tau.
        Interval acc{INFINITY, -INFINITY};
        for (std::size_t j = 1; j <= window; ++j) {
          const Interval e3 = band(min_op_, j, n.params.k1) + kid(n.kids[1]);
          const Interval e4 = band(min_op_, 2, n.params.k1) + hull(kid(n.kids[0]), e3);
          acc = hull(acc, e4);
        }
        return band(max_op_, window, n.params.k2) + acc;
      }
    }
    return {0.0, 0.0};
  }

  const detail::Plan& plan_;
  const SmoothConfig& cfg_;
  BandSource source_;
  SoftRange soft_;
  OpKind min_op_;
  OpKind max_op_;
  std::vector<Interval> out_;
};

ErrorReport static_report(const Formula& f, const SmoothConfig& cfg, BandSource source,
                          double range_bound) {
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  const auto intervals = StaticPropagator(plan, cfg, source, range_bound).run();
  std::map<std::string, Interval> per_node;
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) per_node[plan.nodes[i].id] = intervals[i];
  return finish(intervals[0], std::move(per_node));
}

}  // namespace

ErrorReport error_interval(const Formula& f, const Signal& s, const SmoothConfig& cfg, int t) {
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  detail::check_horizon(plan, s, t);
  detail::SmoothEvaluator ev(plan, s, cfg.srm, cfg.noise_enabled);
  const Interval root = ev.error(0, t);
  std::map<std::string, Interval> per_node;
  // A second sweep over the memo: error(node, tau) is cached for every pair
  // the root needed, and computing one for a pair it did not need is harmless
  // but would widen the hull, so only cached pairs are visited.
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    Interval h{INFINITY, -INFINITY};
    for (int tau = 0; tau <= s.last_time(); ++tau) {
      if (ev.has_error(static_cast<int>(i), tau)) h = hull(h, ev.error(static_cast<int>(i), tau));
    }
    if (h.lo <= h.hi) per_node[plan.nodes[i].id] = h;
  }
  return finish(root, std::move(per_node));
}

ErrorReport error_interval_signal_free(const Formula& f, const SmoothConfig& cfg,
                                       double range_bound) {
  if (!(std::isfinite(range_bound) && range_bound >= 0.0)) {
    throw ConfigError("range bound must be finite and non-negative");
  }
  return static_report(f, cfg, BandSource::ValueFree, range_bound);
}

ErrorReport accuracy_interval(const Formula& f, const SmoothConfig& cfg) {
  return static_report(f, cfg, BandSource::Zero, 0.0);
}

Interval certify(double smooth_value, const ErrorReport& report) {
  return {smooth_value + report.interval.lo, smooth_value + report.interval.hi};
}

double termination_threshold(double target, const ErrorReport& report) {
  return target - report.interval.lo;
}

std::string to_json(const ErrorReport& report) {
  // + 0.0 turns the -0 of sign-flipped zero bands into 0
  nlohmann::ordered_json j;
  j["lo"] = report.interval.lo + 0.0;
  j["hi"] = report.interval.hi + 0.0;
  j["width"] = report.width + 0.0;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::object();
  for (const auto& [id, iv] : report.per_node) nodes[id] = {iv.lo + 0.0, iv.hi + 0.0};
  j["per_node"] = nodes;
  return j.dump();
}

}  // namespace stlsmooth
