#pragma once

// Flattened formula used by every evaluator. Nodes are stored in preorder so
// that a parent always precedes its children.

#include <cmath>
#include <string>
#include <vector>

#include "stlsmooth/formula.hpp"
#include "stlsmooth/interval.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/smooth_semantics.hpp"

namespace stlsmooth::detail {

struct PlanNode {
  FormulaKind kind = FormulaKind::Predicate;
  int t1 = 0;
  int t2 = 0;
  std::vector<int> kids;
  const Predicate* pred = nullptr;  // Predicate nodes only
  std::string id;                   // root path
  SmoothParams params;
};

struct Plan {
  explicit Plan(Formula f) : source(std::move(f)) {}
  Formula source;  // keeps predicates alive
  std::vector<PlanNode> nodes;
  int horizon = 0;
};

/// `cfg` may be null for exact evaluation (parameters unused).
Plan compile(const Formula& f, const SmoothConfig* cfg);

void require_nnf(const Formula& f);
void check_horizon(const Plan& plan, const Signal& s, int t);

/// Memo table over (node, t).
template <typename T>
class NodeTable {
 public:
  NodeTable(std::size_t nodes, std::size_t times)
      : times_(times), values_(nodes * times), done_(nodes * times, 0) {}
  bool has(int node, int t) const { return done_[index(node, t)] != 0; }
  const T& get(int node, int t) const { return values_[index(node, t)]; }
  void set(int node, int t, T v) {
    values_[index(node, t)] = std::move(v);
    done_[index(node, t)] = 1;
  }

 private:
  std::size_t index(int node, int t) const {
    return static_cast<std::size_t>(node) * times_ + static_cast<std::size_t>(t);
  }
  std::size_t times_;
  std::vector<T> values_;
  std::vector<char> done_;
};

class ExactEvaluator {
 public:
  ExactEvaluator(const Plan& plan, const Signal& s);
  double value(int node, int t);

 private:
  const Plan& plan_;
  const Signal& s_;
  NodeTable<double> memo_;
};

/// Smooth values, signal-dependent error intervals and reverse-mode
/// gradients for one (plan, signal, SRM).
class SmoothEvaluator {
 public:
  SmoothEvaluator(const Plan& plan, const Signal& s, Srm srm, bool noise_enabled);

  double value(int node, int t);
  Interval error(int node, int t);
  bool has_error(int node, int t) const { return errors_.has(node, t); }

  /// Adds d value(0, t) / d s into grad (length (T+1) q).
  void backward(int t, std::vector<double>& grad);

  /// Hull of all operator inputs evaluated so far.
  Interval input_range() const { return range_; }

 private:
  void note_inputs(const std::vector<double>& a);
  std::vector<double> child_values(int kid, int from, int to);

  const Plan& plan_;
  const Signal& s_;
  OpKind min_op_;
  OpKind max_op_;
  bool noise_;
  NodeTable<double> values_;
  NodeTable<Interval> errors_;
  Interval range_{INFINITY, -INFINITY};
};

}  // namespace stlsmooth::detail
