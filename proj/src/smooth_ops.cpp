#include "stlsmooth/smooth_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stlsmooth/error.hpp"

namespace stlsmooth {
namespace {

void check_inputs(std::span<const double> a, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ConfigError("smooth operator parameter k must be positive and finite, got " +
                      std::to_string(k));
  }
  if (a.empty()) throw ConfigError("smooth operator applied to an empty set");
  for (double v : a) {
    if (!std::isfinite(v)) throw NumericError("smooth operator input is not finite");
  }
}

// Exponents are shifted by the extremal entry (min for the min-kinds, max for
// the max-kinds), so every weight lies in (0, 1] and the largest equals 1.
double extremum(OpKind kind, std::span<const double> a) {
  return approximates_min(kind) ? *std::min_element(a.begin(), a.end())
                                : *std::max_element(a.begin(), a.end());
}

double signed_k(OpKind kind, double k) { return approximates_min(kind) ? -k : k; }

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::QuasiMin: return "QuasiMin";
    case OpKind::QuasiMax: return "QuasiMax";
    case OpKind::SoftMin: return "SoftMin";
    case OpKind::SoftMax: return "SoftMax";
  }
  return "?";
}

double smooth_op_with_grad(OpKind kind, std::span<const double> a, double k,
                           std::span<double> grad) {
  check_inputs(a, k);
  const double tare = extremum(kind, a);
  const double sk = signed_k(kind, k);

  double sum_w = 0.0;
  double sum_wd = 0.0;  // sum of w_i * (a_i - tare)
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = std::exp(sk * (a[i] - tare));
    if (!grad.empty()) grad[i] = w;
    sum_w += w;
    sum_wd += w * (a[i] - tare);
  }

  double value = 0.0;
  switch (kind) {
    case OpKind::QuasiMin:
    case OpKind::QuasiMax:
      value = tare + std::log(sum_w) / sk;
      break;
    case OpKind::SoftMin:
    case OpKind::SoftMax:
      value = tare + sum_wd / sum_w;
      break;
  }

  if (!grad.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double p = grad[i] / sum_w;
      switch (kind) {
        case OpKind::QuasiMin:
        case OpKind::QuasiMax:
          grad[i] = p;
          break;
        case OpKind::SoftMin:
          grad[i] = p * (1.0 - k * (a[i] - value));
          break;
        case OpKind::SoftMax:
          grad[i] = p * (1.0 - k * (value - a[i]));
          break;
      }
    }
  }
  return value;
}

double smooth_op(OpKind kind, std::span<const double> a, double k) {
  return smooth_op_with_grad(kind, a, k, {});
}

std::vector<double> smooth_op_grad(OpKind kind, std::span<const double> a, double k) {
  std::vector<double> g(a.size());
  smooth_op_with_grad(kind, a, k, g);
  return g;
}

Interval op_error_band_value_free(OpKind kind, std::size_t m, double k,
                                  std::optional<SoftRange> soft_range) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ConfigError("smooth operator parameter k must be positive and finite");
  }
  if (m == 0) throw ConfigError("smooth operator applied to an empty set");
  if (m == 1) return {0.0, 0.0};
  const double md = static_cast<double>(m);
  switch (kind) {
    case OpKind::QuasiMin: return {0.0, std::log(md) / k};
    case OpKind::QuasiMax: return {-std::log(md) / k, 0.0};
    case OpKind::SoftMin:
    case OpKind::SoftMax: {
      if (!soft_range) {
        throw ConfigError("value-free band of a Soft operator needs a range bound");
      }
      if (!(soft_range->range >= 0.0) || !(soft_range->gap >= 0.0)) {
        throw ConfigError("range bound and gap must be non-negative");
      }
      const double width =
          soft_range->range / (1.0 + std::exp(k * soft_range->gap) / (md - 1.0));
      return kind == OpKind::SoftMin ? Interval{-width, 0.0} : Interval{0.0, width};
    }
  }
  return {};
}

Interval op_error_band(OpKind kind, std::span<const double> a, double k, BandMode mode,
                       std::optional<SoftRange> soft_range) {
  check_inputs(a, k);
  const std::size_t m = a.size();
  if (mode == BandMode::ValueFree) return op_error_band_value_free(kind, m, k, soft_range);
  if (m == 1) return {0.0, 0.0};

  // Two smallest and two largest entries; duplicates give a zero gap.
  double min1 = a[0], min2 = INFINITY, max1 = a[0], max2 = -INFINITY;
  for (std::size_t i = 1; i < m; ++i) {
    const double v = a[i];
    if (v < min1) {
      min2 = min1;
      min1 = v;
    } else if (v < min2) {
      min2 = v;
    }
    if (v > max1) {
      max2 = max1;
      max1 = v;
    } else if (v > max2) {
      max2 = v;
    }
  }
  const double md = static_cast<double>(m);

  switch (kind) {
    case OpKind::QuasiMin:
      return {0.0, std::log1p((md - 1.0) * std::exp(-k * (min2 - min1))) / k};
    case OpKind::QuasiMax:
      return {-std::log1p((md - 1.0) * std::exp(-k * (max1 - max2))) / k, 0.0};
    case OpKind::SoftMin: {
      double sum = 0.0;
      for (double v : a) sum += std::exp(-k * (v - min1));
      return {-(max1 - min1) * ((sum - 1.0) / sum), 0.0};
    }
    case OpKind::SoftMax: {
      double sum = 0.0;
      for (double v : a) sum += std::exp(-k * (max1 - v));
      return {0.0, (max1 - min1) * ((sum - 1.0) / sum)};
    }
  }
  return {};
}

}  // namespace stlsmooth
