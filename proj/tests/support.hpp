#pragma once

// Test-only oracles: naive recursive evaluators written straight from the
// definitions (no memoization, no shared code with the library evaluators),
// random formula / signal generators.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "stlsmooth/formula.hpp"
#include "stlsmooth/interval.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/smooth_semantics.hpp"

namespace oracle {

using stlsmooth::Formula;
using stlsmooth::FormulaKind;
using stlsmooth::Interval;
using stlsmooth::OpKind;
using stlsmooth::Signal;

inline double mu(const Formula& f, const Signal& s, int t) {
  return f.predicate()->value(s.sample(t));
}

/// Shift applied to a predicate leaf's value at time t (noise realizations).
using Perturb = std::function<double(const Formula& leaf, int t)>;

/// Exact robustness by direct recursion.
inline double exact(const Formula& f, const Signal& s, int t, const Perturb* w = nullptr) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (f.kind()) {
    case FormulaKind::Predicate:
      return mu(f, s, t) + (w ? (*w)(f, t) : 0.0);
    case FormulaKind::Not:
      return -exact(f.child(), s, t, w);
    case FormulaKind::And: {
      double r = inf;
      for (const auto& c : f.children()) r = std::min(r, exact(c, s, t, w));
      return r;
    }
    case FormulaKind::Or: {
      double r = -inf;
      for (const auto& c : f.children()) r = std::max(r, exact(c, s, t, w));
      return r;
    }
    case FormulaKind::Always: {
      double r = inf;
      for (int i = t + f.t1(); i <= t + f.t2(); ++i) r = std::min(r, exact(f.child(), s, i, w));
      return r;
    }
    case FormulaKind::Eventually: {
      double r = -inf;
      for (int i = t + f.t1(); i <= t + f.t2(); ++i) r = std::max(r, exact(f.child(), s, i, w));
      return r;
    }
    case FormulaKind::Until: {
      double r = -inf;
      for (int tau = t + f.t1(); tau <= t + f.t2(); ++tau) {
        double m = inf;
        for (int d = t + f.t1(); d <= tau; ++d) m = std::min(m, exact(f.child(1), s, d, w));
        r = std::max(r, std::min(exact(f.child(0), s, tau, w), m));
      }
      return r;
    }
  }
  return 0.0;
}

/// Smooth operators, unstabilized, in long double.
inline double op(OpKind kind, const std::vector<double>& a, double k) {
  long double num = 0, den = 0;
  const long double sign = stlsmooth::approximates_min(kind) ? -1.0L : 1.0L;
  for (double v : a) {
    const long double e = std::exp(sign * k * static_cast<long double>(v));
    num += v * e;
    den += e;
  }
  switch (kind) {
    case OpKind::QuasiMin: return static_cast<double>(-std::log(den) / k);
    case OpKind::QuasiMax: return static_cast<double>(std::log(den) / k);
    default: return static_cast<double>(num / den);
  }
}

/// Band for exact - smooth, from the sorted inputs.
inline Interval band(OpKind kind, std::vector<double> a, double k) {
  std::sort(a.begin(), a.end(), std::greater<>());  // a[0] largest
  const std::size_t m = a.size();
  if (m == 1) return {0, 0};
  const double a1 = a[0], a2 = a[1], am1 = a[m - 2], am = a[m - 1];
  switch (kind) {
    case OpKind::QuasiMin:
      return {0, std::log1p((m - 1) * std::exp(-k * (am1 - am))) / k};
    case OpKind::QuasiMax:
      return {-std::log1p((m - 1) * std::exp(-k * (a1 - a2))) / k, 0};
    case OpKind::SoftMin: {
      long double sum = 0;
      for (double v : a) sum += std::exp(-k * static_cast<long double>(v - am));
      return {static_cast<double>(-(a1 - am) * (1 - 1 / sum)), 0};
    }
    case OpKind::SoftMax: {
      long double sum = 0;
      for (double v : a) sum += std::exp(-k * static_cast<long double>(a1 - v));
      return {0, static_cast<double>((a1 - am) * (1 - 1 / sum))};
    }
  }
  return {0, 0};
}

struct Smooth {
  stlsmooth::Srm srm;
  double k1, k2;
  bool noise = false;

  OpKind mn() const { return stlsmooth::min_operator(srm); }
  OpKind mx() const { return stlsmooth::max_operator(srm); }

  double value(const Formula& f, const Signal& s, int t) const {
    switch (f.kind()) {
      case FormulaKind::Predicate: return mu(f, s, t);
      case FormulaKind::Not: return -value(f.child(), s, t);
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<double> a;
        for (const auto& c : f.children()) a.push_back(value(c, s, t));
        return f.kind() == FormulaKind::And ? op(mn(), a, k1) : op(mx(), a, k2);
      }
      case FormulaKind::Always:
      case FormulaKind::Eventually: {
        std::vector<double> a;
        for (int i = t + f.t1(); i <= t + f.t2(); ++i) a.push_back(value(f.child(), s, i));
        return f.kind() == FormulaKind::Always ? op(mn(), a, k1) : op(mx(), a, k2);
      }
      case FormulaKind::Until: {
        std::vector<double> outer;
        for (int tau = t + f.t1(); tau <= t + f.t2(); ++tau) {
          std::vector<double> run;
          for (int d = t + f.t1(); d <= tau; ++d) run.push_back(value(f.child(1), s, d));
          outer.push_back(op(mn(), {value(f.child(0), s, tau), op(mn(), run, k1)}, k1));
        }
        return op(mx(), outer, k2);
      }
    }
    return 0;
  }

  /// Signal-dependent error interval by direct recursion.
  Interval error(const Formula& f, const Signal& s, int t) const {
    auto hull_all = [](const std::vector<Interval>& v) {
      Interval h{INFINITY, -INFINITY};
      for (const auto& i : v) h = stlsmooth::hull(h, i);
      return h;
    };
    switch (f.kind()) {
      case FormulaKind::Predicate: {
        if (!noise) return {0, 0};
        const Interval w = f.predicate()->noise(s.sample(t));
        return {-w.hi, -w.lo};
      }
      case FormulaKind::Not: {
        const Interval c = error(f.child(), s, t);
        return {-c.hi, -c.lo};
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<double> a;
        std::vector<Interval> e;
        for (const auto& c : f.children()) {
          a.push_back(value(c, s, t));
          e.push_back(error(c, s, t));
        }
        const Interval b = f.kind() == FormulaKind::And ? band(mn(), a, k1) : band(mx(), a, k2);
        return b + hull_all(e);
      }
      case FormulaKind::Always:
      case FormulaKind::Eventually: {
        std::vector<double> a;
        std::vector<Interval> e;
        for (int i = t + f.t1(); i <= t + f.t2(); ++i) {
          a.push_back(value(f.child(), s, i));
          e.push_back(error(f.child(), s, i));
        }
        const Interval b = f.kind() == FormulaKind::Always ? band(mn(), a, k1) : band(mx(), a, k2);
        return b + hull_all(e);
      }
      case FormulaKind::Until: {
        std::vector<double> outer;
        std::vector<Interval> e4s;
        for (int tau = t + f.t1(); tau <= t + f.t2(); ++tau) {
          std::vector<double> run;
          std::vector<Interval> e2;
          for (int d = t + f.t1(); d <= tau; ++d) {
            run.push_back(value(f.child(1), s, d));
            e2.push_back(error(f.child(1), s, d));
          }
          const double phi3 = op(mn(), run, k1);
          const Interval e3 = band(mn(), run, k1) + hull_all(e2);
          const std::vector<double> pair{value(f.child(0), s, tau), phi3};
          e4s.push_back(band(mn(), pair, k1) + stlsmooth::hull(error(f.child(0), s, tau), e3));
          outer.push_back(op(mn(), pair, k1));
        }
        return band(mx(), outer, k2) + hull_all(e4s);
      }
    }
    return {0, 0};
  }
};

/// Random NNF-or-general formulas over affine predicates on q channels.
class Generator {
 public:
  Generator(std::uint64_t seed, std::size_t q) : rng_(seed), q_(q) {
    for (int i = 0; i < 4; ++i) {
      std::vector<double> c(q);
      for (auto& v : c) v = uni(-1, 1);
      preds_.push_back(std::make_shared<stlsmooth::Predicate>(
          stlsmooth::Predicate::affine("p" + std::to_string(i), c, uni(-1, 1))));
    }
  }

  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  void set_noise(stlsmooth::Interval w) {
    for (auto& p : preds_) p = std::make_shared<stlsmooth::Predicate>(p->with_noise(w));
  }

  /// NNF formula of depth <= depth; windows kept short so horizons stay small.
  Formula nnf(int depth, bool allow_until = true) {
    const int choice = depth <= 0 ? pick(0, 1) : pick(0, allow_until ? 6 : 5);
    auto leaf = [&] { return Formula::pred(preds_[static_cast<std::size_t>(pick(0, 3))]); };
    switch (choice) {
      case 0: return leaf();
      case 1: return Formula::negate(leaf());
      case 2:
      case 3: {
        std::vector<Formula> kids;
        const int n = pick(2, 3);
        for (int i = 0; i < n; ++i) kids.push_back(nnf(depth - 1, allow_until));
        return choice == 2 ? Formula::conj(kids) : Formula::disj(kids);
      }
      case 4:
      case 5: {
        const int a = pick(0, 2), b = a + pick(0, 3);
        return choice == 4 ? Formula::always(a, b, nnf(depth - 1, allow_until))
                           : Formula::eventually(a, b, nnf(depth - 1, allow_until));
      }
      default: {
        const int a = pick(0, 2), b = a + pick(0, 3);
        return Formula::until(a, b, nnf(depth - 1, allow_until), nnf(depth - 1, allow_until));
      }
    }
  }

  /// Formula with negations anywhere except above Until.
  Formula general(int depth) {
    Formula f = nnf(depth, false);
    return wrap_negations(f);
  }

  Signal signal(int T) {
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(T + 1), std::vector<double>(q_));
    for (auto& s : samples)
      for (auto& v : s) v = uni(-3, 3);
    return Signal(samples);
  }

 private:
  Formula wrap_negations(const Formula& f) {
    Formula out = f;
    if (f.kind() != FormulaKind::Predicate && f.kind() != FormulaKind::Not) {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(wrap_negations(c));
      switch (f.kind()) {
        case FormulaKind::And: out = Formula::conj(kids); break;
        case FormulaKind::Or: out = Formula::disj(kids); break;
        case FormulaKind::Always: out = Formula::always(f.t1(), f.t2(), kids[0]); break;
        case FormulaKind::Eventually: out = Formula::eventually(f.t1(), f.t2(), kids[0]); break;
        default: break;
      }
    }
    if (pick(0, 2) == 0) out = Formula::negate(out);
    return out;
  }

  std::mt19937_64 rng_;
  std::size_t q_;
  std::vector<std::shared_ptr<const stlsmooth::Predicate>> preds_;
};

/// Relative difference with an absolute floor.
inline double rel(double a, double b, double floor = 1e-12) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace oracle
