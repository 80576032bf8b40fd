#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stlsmooth/predicate.hpp"

namespace stlsmooth {

/// Smooth operator parameters: k1 for smooth-min, k2 for smooth-max.
struct SmoothParams {
  double k1 = 3.0;
  double k2 = 3.0;
  friend bool operator==(const SmoothParams&, const SmoothParams&) = default;
};

enum class FormulaKind { Predicate, Not, And, Or, Eventually, Always, Until };

/// Immutable bounded-time STL expression tree. Copies share structure.
///
/// And/Or hold two or more children. Temporal nodes carry integer bounds
/// 0 <= t1 <= t2. Until keeps (left, right) as children 0 and 1.
class Formula {
 public:
  static Formula pred(PredicatePtr p);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula eventually(int t1, int t2, Formula f);
  static Formula always(int t1, int t2, Formula f);
  static Formula until(int t1, int t2, Formula left, Formula right);

  FormulaKind kind() const;
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i = 0) const { return children()[i]; }
  int t1() const;
  int t2() const;
  /// Null unless kind() == Predicate.
  const PredicatePtr& predicate() const;

  /// Node-local (k1, k2); a SmoothConfig override for the same node wins.
  const std::optional<SmoothParams>& local_params() const;
  Formula with_local_params(SmoothParams params) const;

  /// Identity of the underlying node (for structure-sharing checks).
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Node ids are root paths of child indices: "/" is the root, "/0/2" is the
/// third child of the first child.
std::string path_to_string(std::span<const std::size_t> path);

/// Pushes negations to predicates. Throws ConfigError on a negated Until.
Formula to_nnf(const Formula& f);
bool is_nnf(const Formula& f);

/// Merges nested same-kind And/Or nodes into one n-ary node. Off by default
/// because it changes smooth values and error bands.
Formula flatten(const Formula& f);

/// Largest sum of nested upper interval bounds.
int horizon(const Formula& f);
std::size_t node_count(const Formula& f);

/// Text that parses back to a structurally identical tree.
std::string to_string(const Formula& f);

/// Same shape, bounds, predicates (by name) and local params.
bool structurally_equal(const Formula& a, const Formula& b);

/// Name lookup for the parser. Entries are either predicates or macro
/// formulas (a box expands to a conjunction of four affine predicates).
class PredicateTable {
 public:
  /// q = 0 accepts any predicate dimension; otherwise every predicate
  /// must read samples of length q.
  explicit PredicateTable(std::size_t q = 0) : q_(q) {}

  void add(Predicate p);
  void add_macro(std::string name, Formula f);

  /// Registers name_xlo, name_xhi, name_ylo, name_yhi and the macro `name`
  /// = their conjunction (positive inside the box). Returns the macro.
  Formula add_box(const std::string& name, std::size_t ix, std::size_t iy, double xlo,
                  double xhi, double ylo, double yhi, Interval noise = {});

  std::optional<Formula> lookup(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::size_t dim() const { return q_; }
  std::vector<std::string> names() const;

 private:
  std::size_t q_;
  std::map<std::string, Formula, std::less<>> entries_;
};

}  // namespace stlsmooth
