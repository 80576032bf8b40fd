#include "detail/plan.hpp"

#include "stlsmooth/error.hpp"

namespace stlsmooth::detail {
namespace {

int add_node(Plan& plan, const Formula& f, std::vector<std::size_t>& path, const SmoothConfig* cfg) {
  const int index = static_cast<int>(plan.nodes.size());
  plan.nodes.emplace_back();
  {
    PlanNode& n = plan.nodes.back();
    n.kind = f.kind();
    n.t1 = f.t1();
    n.t2 = f.t2();
    n.pred = f.kind() == FormulaKind::Predicate ? f.predicate().get() : nullptr;
    n.id = path_to_string(path);
    if (cfg) n.params = cfg->params_at(n.id, f);
  }
  std::vector<int> kids;
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    path.push_back(i);
    kids.push_back(add_node(plan, f.child(i), path, cfg));
    path.pop_back();
  }
  plan.nodes[static_cast<std::size_t>(index)].kids = std::move(kids);
  return index;
}

}  // namespace

Plan compile(const Formula& f, const SmoothConfig* cfg) {
  Plan plan(f);
  plan.horizon = stlsmooth::horizon(f);
  std::vector<std::size_t> path;
  add_node(plan, f, path, cfg);
  return plan;
}

void require_nnf(const Formula& f) {
  if (!is_nnf(f)) {
    throw ConfigError(
        "smooth semantics need negation normal form (negation only above predicates); "
        "apply to_nnf first");
  }
}

void check_horizon(const Plan& plan, const Signal& s, int t) {
  if (t < 0 || t + plan.horizon > s.last_time()) {
    throw HorizonError("evaluating at t = " + std::to_string(t) + " needs samples up to " +
                       std::to_string(t + plan.horizon) + " but the signal ends at T = " +
                       std::to_string(s.last_time()));
  }
}

}  // namespace stlsmooth::detail
