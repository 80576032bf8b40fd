#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stlsmooth/interval.hpp"

namespace stlsmooth {

/// The four smooth min/max operators. Quasi operators are log-sum-exp
/// style; Soft operators are exponentially weighted averages.
enum class OpKind { QuasiMin, QuasiMax, SoftMin, SoftMax };

std::string_view to_string(OpKind kind);

/// True for QuasiMin and SoftMin.
constexpr bool approximates_min(OpKind kind) {
  return kind == OpKind::QuasiMin || kind == OpKind::SoftMin;
}

/// Smooth operator value. Throws ConfigError for k <= 0 or empty input and
/// NumericError for non-finite entries.
double smooth_op(OpKind kind, std::span<const double> a, double k);

/// d op / d a_i for every i. Components always sum to one.
std::vector<double> smooth_op_grad(OpKind kind, std::span<const double> a,
                                   double k);

/// Value and gradient in one pass; `grad` must have a.size() entries.
double smooth_op_with_grad(OpKind kind, std::span<const double> a, double k,
                           std::span<double> grad);

enum class BandMode {
  /// Value-dependent bounds using the sorted entries of `a`.
  Tight,
  /// Bounds that depend only on (m, k) and, for Soft kinds, a range bound.
  ValueFree,
};

/// Data-free inputs for ValueFree Soft bands: `range` bounds max(a) - min(a)
/// and `gap` lower-bounds the distance between the two extreme entries
/// (a_{m-1} - a_m for SoftMin, a_1 - a_2 for SoftMax). gap = 0 is always safe.
struct SoftRange {
  double range = 0.0;
  double gap = 0.0;
};

/// Interval guaranteed to contain exact(a) - smooth(a), where exact is the
/// true min (or max). ValueFree Soft bands require `soft_range`.
Interval op_error_band(OpKind kind, std::span<const double> a, double k,
                       BandMode mode,
                       std::optional<SoftRange> soft_range = std::nullopt);

/// ValueFree band for an m-element input without the values themselves.
Interval op_error_band_value_free(OpKind kind, std::size_t m, double k,
                                  std::optional<SoftRange> soft_range =
                                      std::nullopt);

}  // namespace stlsmooth
