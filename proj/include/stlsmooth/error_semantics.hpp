#pragma once

#include <map>
#include <string>

#include "stlsmooth/formula.hpp"
#include "stlsmooth/interval.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/smooth_semantics.hpp"

namespace stlsmooth {

/// Certified range of (exact - smooth) robustness.
struct ErrorReport {
  Interval interval;
  /// Node id -> interval at that node (hull over the times it was evaluated).
  std::map<std::string, Interval> per_node;
  double width = 0.0;
};

/// Signal-dependent bounds: operator bands are evaluated on the smoothed
/// child values actually fed to each operator.
ErrorReport error_interval(const Formula& f, const Signal& s, const SmoothConfig& cfg, int t = 0);

/// Bounds that hold for every signal. Soft operator bands use `range_bound`
/// as the bound on the spread of their inputs; it is unused for SRM1.
/// Throws ConfigError when a predicate has sample-dependent noise and noise
/// is enabled.
ErrorReport error_interval_signal_free(const Formula& f, const SmoothConfig& cfg,
                                       double range_bound);

/// Noise-only bounds for the non-smooth robustness computed from noisy
/// predicates (every operator band is zero).
ErrorReport accuracy_interval(const Formula& f, const SmoothConfig& cfg);

/// [smooth + lo, smooth + hi]; contains the exact robustness.
Interval certify(double smooth_value, const ErrorReport& report);

/// Smallest smooth value that certifies exact robustness above `target`.
double termination_threshold(double target, const ErrorReport& report);

/// {"lo":..,"hi":..,"width":..,"per_node":{"/":[lo,hi],...}}
std::string to_json(const ErrorReport& report);

}  // namespace stlsmooth
