#include <cmath>

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"
#include "stlsmooth/synthesis.hpp"

namespace stlsmooth {
namespace {

/// One tunable scalar: node id ("" for the global defaults) and which k.
struct Coord {
  std::string node;
  bool k1 = true;
};

bool uses_k1(FormulaKind k) {
  return k == FormulaKind::And || k == FormulaKind::Always || k == FormulaKind::Until;
}
bool uses_k2(FormulaKind k) {
  return k == FormulaKind::Or || k == FormulaKind::Eventually || k == FormulaKind::Until;
}

std::vector<Coord> coordinates(const detail::Plan& plan, TuneMode mode) {
  std::vector<Coord> out;
  if (mode == TuneMode::Global) {
    bool a = false, b = false;
    for (const auto& n : plan.nodes) {
      a = a || uses_k1(n.kind);
      b = b || uses_k2(n.kind);
    }
    if (a) out.push_back({"", true});
    if (b) out.push_back({"", false});
    return out;
  }
  for (const auto& n : plan.nodes) {
    if (uses_k1(n.kind)) out.push_back({n.id, true});
    if (uses_k2(n.kind)) out.push_back({n.id, false});
  }
  return out;
}

double& slot(SmoothConfig& cfg, const Coord& c) {
  SmoothParams& p = c.node.empty() ? cfg.defaults : cfg.overrides.at(c.node);
  return c.k1 ? p.k1 : p.k2;
}

double read(const SmoothConfig& cfg, const Coord& c) {
  const SmoothParams& p = c.node.empty() ? cfg.defaults : cfg.overrides.at(c.node);
  return c.k1 ? p.k1 : p.k2;
}

double width_of(const Formula& f, const SmoothConfig& cfg, double range_bound, const Signal* s) {
  return s ? error_interval(f, *s, cfg).width
           : error_interval_signal_free(f, cfg, range_bound).width;
}

/// Pins every node's effective parameters into the override map so each
/// node can move independently.
SmoothConfig materialize(const Formula& f, const SmoothConfig& cfg, const detail::Plan& plan) {
  SmoothConfig out = cfg;
  for (const auto& n : plan.nodes) {
    if (uses_k1(n.kind) || uses_k2(n.kind)) out.overrides[n.id] = n.params;
  }
  (void)f;
  return out;
}

double objective(const Formula& f, const SmoothConfig& cfg, const std::vector<Coord>& coords,
                 double alpha, double range_bound, const Signal* s) {
  double reg = 0.0;
  for (const Coord& c : coords) reg += read(cfg, c) * read(cfg, c);
  return width_of(f, cfg, range_bound, s) + alpha * reg;
}

}  // namespace

double tuning_objective(const Formula& f, const SmoothConfig& cfg, double alpha, TuneMode mode,
                        double range_bound, const Signal* signal) {
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  SmoothConfig c = mode == TuneMode::PerNode ? materialize(f, cfg, plan) : cfg;
  return objective(f, c, coordinates(plan, mode), alpha, range_bound, signal);
}

SmoothConfig tune_parameters(const Formula& f, const SmoothConfig& cfg, double alpha,
                             TuneMode mode, double range_bound, const Signal* signal) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  const auto coords = coordinates(plan, mode);
  SmoothConfig best = mode == TuneMode::PerNode ? materialize(f, cfg, plan) : cfg;
  double best_val = objective(f, best, coords, alpha, range_bound, signal);

  // log10 k grid
  constexpr double grid_lo = -2.0, grid_hi = 3.0;
  constexpr int grid_n = 51;
  const double grid_step = (grid_hi - grid_lo) / (grid_n - 1);

  auto eval_at = [&](SmoothConfig& c, const Coord& coord, double k) {
    slot(c, coord) = k;
    return objective(f, c, coords, alpha, range_bound, signal);
  };

  for (int sweep = 0; sweep < 10; ++sweep) {
    const double start = best_val;
    for (const Coord& coord : coords) {
      SmoothConfig trial = best;
      double arg = read(best, coord);
      double val = best_val;
      for (int i = 0; i < grid_n; ++i) {
        const double k = std::pow(10.0, grid_lo + grid_step * i);
        const double v = eval_at(trial, coord, k);
        if (v < val) {
          val = v;
          arg = k;
        }
      }
      // golden-section refinement in log k around the incumbent
      double a = std::log10(arg) - grid_step, b = std::log10(arg) + grid_step;
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double c1 = b - g * (b - a), c2 = a + g * (b - a);
      double f1 = eval_at(trial, coord, std::pow(10.0, c1));
      double f2 = eval_at(trial, coord, std::pow(10.0, c2));
      for (int i = 0; i < 60; ++i) {
        if (f1 < f2) {
          b = c2; c2 = c1; f2 = f1;
          c1 = b - g * (b - a);
          f1 = eval_at(trial, coord, std::pow(10.0, c1));
        } else {
          a = c1; c1 = c2; f1 = f2;
          c2 = a + g * (b - a);
          f2 = eval_at(trial, coord, std::pow(10.0, c2));
        }
      }
      if (f1 < val) { val = f1; arg = std::pow(10.0, c1); }
      if (f2 < val) { val = f2; arg = std::pow(10.0, c2); }
      if (val < best_val) {
        slot(best, coord) = arg;
        best_val = val;
      }
    }
    if (!(best_val < start - 1e-12 * std::max(1.0, std::abs(start)))) break;
  }
  return best;
}

}  // namespace stlsmooth
