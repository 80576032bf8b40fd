#include "stlsmooth/semantics.hpp"

#include <algorithm>
#include <limits>

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"

namespace stlsmooth {
namespace detail {

ExactEvaluator::ExactEvaluator(const Plan& plan, const Signal& s)
    : plan_(plan), s_(s), memo_(plan.nodes.size(), s.length()) {}

double ExactEvaluator::value(int node, int t) {
  if (memo_.has(node, t)) return memo_.get(node, t);
  const PlanNode& n = plan_.nodes[static_cast<std::size_t>(node)];
  constexpr double inf = std::numeric_limits<double>::infinity();
  double r = 0.0;
  switch (n.kind) {
    case FormulaKind::Predicate:
      r = n.pred->value(s_.sample(t));
      break;
    case FormulaKind::Not:
      r = -value(n.kids[0], t);
      break;
    case FormulaKind::And:
      r = inf;
      for (int k : n.kids) r = std::min(r, value(k, t));
      break;
    case FormulaKind::Or:
      r = -inf;
      for (int k : n.kids) r = std::max(r, value(k, t));
      break;
    case FormulaKind::Always:
      r = inf;
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) r = std::min(r, value(n.kids[0], tau));
      break;
    case FormulaKind::Eventually:
      r = -inf;
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) r = std::max(r, value(n.kids[0], tau));
      break;
    case FormulaKind::Until: {
      // running min of the right operand over [t+t1, tau]
      double run = inf;
      r = -inf;
      for (int tau = t + n.t1; tau <= t + n.t2; ++tau) {
        run = std::min(run, value(n.kids[1], tau));
        r = std::max(r, std::min(value(n.kids[0], tau), run));
      }
      break;
    }
  }
  memo_.set(node, t, r);
  return r;
}

}  // namespace detail

double robustness(const Formula& f, const Signal& s, int t) {
  const detail::Plan plan = detail::compile(f, nullptr);
  detail::check_horizon(plan, s, t);
  detail::ExactEvaluator ev(plan, s);
  return ev.value(0, t);
}

Verdict verdict_of(double rho) {
  if (rho > 0.0) return Verdict::Sat;
  if (rho < 0.0) return Verdict::Unsat;
  return Verdict::Boundary;
}

Verdict satisfies(const Formula& f, const Signal& s) { return verdict_of(robustness(f, s, 0)); }

}  // namespace stlsmooth
