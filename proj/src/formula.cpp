#include "stlsmooth/formula.hpp"

#include <algorithm>
#include <cctype>

#include "stlsmooth/error.hpp"

namespace stlsmooth {

struct Formula::Node {
  FormulaKind kind = FormulaKind::Predicate;
  int t1 = 0;
  int t2 = 0;
  std::vector<Formula> children;
  PredicatePtr pred;
  std::optional<SmoothParams> local;
};

namespace {

void check_interval(int t1, int t2) {
  if (t1 < 0 || t2 < 0) {
    throw IntervalError("temporal interval [" + std::to_string(t1) + "," +
                        std::to_string(t2) + "] has a negative bound");
  }
  if (t2 < t1) {
    throw IntervalError("temporal interval [" + std::to_string(t1) + "," +
                        std::to_string(t2) + "] has t2 < t1");
  }
}

void check_params(const SmoothParams& p) {
  if (!(p.k1 > 0.0) || !(p.k2 > 0.0)) throw ConfigError("k1 and k2 must be positive");
}

}  // namespace

Formula Formula::pred(PredicatePtr p) {
  if (!p) throw ConfigError("null predicate");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Predicate;
  n->pred = std::move(p);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> children) {
  if (children.size() < 2) throw ConfigError("conjunction needs at least two operands");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::disj(std::vector<Formula> children) {
  if (children.size() < 2) throw ConfigError("disjunction needs at least two operands");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::eventually(int t1, int t2, Formula f) {
  check_interval(t1, t2);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Eventually;
  n->t1 = t1;
  n->t2 = t2;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::always(int t1, int t2, Formula f) {
  check_interval(t1, t2);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Always;
  n->t1 = t1;
  n->t2 = t2;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::until(int t1, int t2, Formula left, Formula right) {
  check_interval(t1, t2);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Until;
  n->t1 = t1;
  n->t2 = t2;
  n->children.push_back(std::move(left));
  n->children.push_back(std::move(right));
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
std::span<const Formula> Formula::children() const { return node_->children; }
int Formula::t1() const { return node_->t1; }
int Formula::t2() const { return node_->t2; }
const PredicatePtr& Formula::predicate() const { return node_->pred; }
const std::optional<SmoothParams>& Formula::local_params() const { return node_->local; }

Formula Formula::with_local_params(SmoothParams params) const {
  check_params(params);
  if (node_->kind == FormulaKind::Predicate) {
    throw ConfigError("smooth parameters cannot be attached to a predicate leaf");
  }
  auto n = std::make_shared<Node>(*node_);
  n->local = params;
  return Formula(std::move(n));
}

std::string path_to_string(std::span<const std::size_t> path) {
  if (path.empty()) return "/";
  std::string out;
  for (std::size_t i : path) {
    out += '/';
    out += std::to_string(i);
  }
  return out;
}

namespace {

Formula rebuild(const Formula& like, std::vector<Formula> children) {
  Formula out = [&] {
    switch (like.kind()) {
      case FormulaKind::Predicate: return like;
      case FormulaKind::Not: return Formula::negate(std::move(children[0]));
      case FormulaKind::And: return Formula::conj(std::move(children));
      case FormulaKind::Or: return Formula::disj(std::move(children));
      case FormulaKind::Eventually:
        return Formula::eventually(like.t1(), like.t2(), std::move(children[0]));
      case FormulaKind::Always:
        return Formula::always(like.t1(), like.t2(), std::move(children[0]));
      case FormulaKind::Until:
        return Formula::until(like.t1(), like.t2(), std::move(children[0]),
                              std::move(children[1]));
    }
    return like;
  }();
  if (like.local_params() && out.kind() != FormulaKind::Predicate) {
    out = out.with_local_params(*like.local_params());
  }
  return out;
}

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case FormulaKind::Predicate:
      return negated ? Formula::negate(f) : f;
    case FormulaKind::Not:
      return nnf(f.child(), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(nnf(c, negated));
      const bool make_and = (f.kind() == FormulaKind::And) != negated;
      Formula out = make_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      return f.local_params() ? out.with_local_params(*f.local_params()) : out;
    }
    case FormulaKind::Eventually:
    case FormulaKind::Always: {
      Formula kid = nnf(f.child(), negated);
      const bool make_f = (f.kind() == FormulaKind::Eventually) != negated;
      Formula out = make_f ? Formula::eventually(f.t1(), f.t2(), std::move(kid))
                           : Formula::always(f.t1(), f.t2(), std::move(kid));
      return f.local_params() ? out.with_local_params(*f.local_params()) : out;
    }
    case FormulaKind::Until: {
      if (negated) {
        throw ConfigError(
            "negated Until has no dual in this logic; rewrite the formula without "
            "negating an Until");
      }
      return rebuild(f, {nnf(f.child(0), false), nnf(f.child(1), false)});
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return f.child().kind() == FormulaKind::Predicate;
  for (const Formula& c : f.children()) {
    if (!is_nnf(c)) return false;
  }
  return true;
}

Formula flatten(const Formula& f) {
  if (f.kind() == FormulaKind::Predicate) return f;
  std::vector<Formula> kids;
  for (const Formula& c : f.children()) {
    Formula fc = flatten(c);
    const bool same_boolean = (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) &&
                              fc.kind() == f.kind() && !fc.local_params();
    if (same_boolean) {
      for (const Formula& g : fc.children()) kids.push_back(g);
    } else {
      kids.push_back(std::move(fc));
    }
  }
  return rebuild(f, std::move(kids));
}

int horizon(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Predicate: return 0;
    case FormulaKind::Not: return horizon(f.child());
    case FormulaKind::And:
    case FormulaKind::Or: {
      int h = 0;
      for (const Formula& c : f.children()) h = std::max(h, horizon(c));
      return h;
    }
    case FormulaKind::Eventually:
    case FormulaKind::Always: return f.t2() + horizon(f.child());
    case FormulaKind::Until:
      return f.t2() + std::max(horizon(f.child(0)), horizon(f.child(1)));
  }
  return 0;
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const Formula& c : f.children()) n += node_count(c);
  return n;
}

namespace {

std::string bounds(const Formula& f) {
  return "[" + std::to_string(f.t1()) + "," + std::to_string(f.t2()) + "]";
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Predicate:
      out += f.predicate()->name();
      return;
    case FormulaKind::Not:
      out += '!';
      print(f.child(), out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* sep = f.kind() == FormulaKind::And ? " & " : " | ";
      out += '(';
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        print(f.child(i), out);
      }
      out += ')';
      return;
    }
    case FormulaKind::Eventually:
    case FormulaKind::Always:
      out += f.kind() == FormulaKind::Eventually ? "F" : "G";
      out += bounds(f);
      out += ' ';
      print(f.child(), out);
      return;
    case FormulaKind::Until:
      // Prefix operators bind tighter than U, so only binary children need
      // their own parentheses, which And/Or/Until always print.
      out += '(';
      print(f.child(0), out);
      out += " U" + bounds(f) + " ";
      print(f.child(1), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind() || a.t1() != b.t1() || a.t2() != b.t2()) return false;
  if (a.local_params() != b.local_params()) return false;
  if (a.kind() == FormulaKind::Predicate) return a.predicate()->name() == b.predicate()->name();
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!structurally_equal(a.child(i), b.child(i))) return false;
  }
  return true;
}

namespace {

void check_identifier(const std::string& name) {
  const bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                  });
  if (!ok) throw ConfigError("'" + name + "' is not a valid identifier");
}

}  // namespace

void PredicateTable::add(Predicate p) {
  check_identifier(p.name());
  if (q_ != 0 && p.dim() != q_) {
    throw DimensionError("predicate '" + p.name() + "' reads samples of length " +
                         std::to_string(p.dim()) + " but the table expects " +
                         std::to_string(q_));
  }
  if (contains(p.name())) throw ConfigError("duplicate identifier '" + p.name() + "'");
  std::string name = p.name();
  entries_.emplace(std::move(name), Formula::pred(std::make_shared<const Predicate>(std::move(p))));
}

void PredicateTable::add_macro(std::string name, Formula f) {
  check_identifier(name);
  if (contains(name)) throw ConfigError("duplicate identifier '" + name + "'");
  entries_.emplace(std::move(name), std::move(f));
}

Formula PredicateTable::add_box(const std::string& name, std::size_t ix, std::size_t iy,
                                double xlo, double xhi, double ylo, double yhi,
                                Interval noise) {
  if (q_ == 0) throw ConfigError("boxes need a table with a fixed sample length");
  if (ix >= q_ || iy >= q_) throw DimensionError("box '" + name + "': index out of range");
  if (!(xlo < xhi) || !(ylo < yhi)) throw ConfigError("box '" + name + "' is empty");
  auto side = [&](const std::string& suffix, std::size_t idx, double sign, double offset) {
    std::vector<double> c(q_, 0.0);
    c[idx] = sign;
    Predicate p = Predicate::affine(name + suffix, std::move(c), offset).with_noise(noise);
    add(p);
    return *lookup(name + suffix);
  };
  std::vector<Formula> sides;
  sides.push_back(side("_xlo", ix, 1.0, -xlo));   // x - xlo >= 0
  sides.push_back(side("_xhi", ix, -1.0, xhi));   // xhi - x >= 0
  sides.push_back(side("_ylo", iy, 1.0, -ylo));
  sides.push_back(side("_yhi", iy, -1.0, yhi));
  Formula box = Formula::conj(std::move(sides));
  add_macro(name, box);
  return box;
}

std::optional<Formula> PredicateTable::lookup(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool PredicateTable::contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

std::vector<std::string> PredicateTable::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

}  // namespace stlsmooth
