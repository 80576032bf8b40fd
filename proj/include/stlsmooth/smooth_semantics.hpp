#pragma once

#include <map>
#include <string>
#include <string_view>

#include "stlsmooth/formula.hpp"
#include "stlsmooth/interval.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/smooth_ops.hpp"

namespace stlsmooth {

/// Smooth robustness measures, by (smooth-min, smooth-max) pair:
/// SRM1 (QuasiMin, QuasiMax), SRM2 (QuasiMin, SoftMax),
/// SRM3 (SoftMin, QuasiMax), SRM4 (SoftMin, SoftMax).
enum class Srm { SRM1, SRM2, SRM3, SRM4 };

std::string_view to_string(Srm srm);
/// Accepts "SRM1".."SRM4" (case-insensitive) or "1".."4".
Srm parse_srm(std::string_view text);
OpKind min_operator(Srm srm);
OpKind max_operator(Srm srm);

struct SmoothConfig {
  Srm srm = Srm::SRM1;
  SmoothParams defaults{};
  /// Node id (root path, see path_to_string) -> parameters for that node.
  /// Takes precedence over a node's local parameters.
  std::map<std::string, SmoothParams> overrides;
  /// Whether predicate noise bands enter the error intervals.
  bool noise_enabled = false;

  /// Parameters in effect at a node.
  SmoothParams params_at(const std::string& node_id, const Formula& node) const;
  /// Throws ConfigError for non-positive or non-finite k values.
  void validate() const;
};

/// Smooth robustness of an NNF formula; And/G use the smooth-min, Or/F the
/// smooth-max and Until nests them the same way as the exact semantics.
/// Predicate noise never enters the value.
///
/// Throws ConfigError for non-NNF input and HorizonError as robustness().
double smooth_robustness(const Formula& f, const Signal& s, const SmoothConfig& cfg, int t = 0);

enum class Soundness { Sound, ReverseSound, AsymptoticOnly };
std::string_view to_string(Soundness s);

/// SRM2 under-approximates (sound), SRM3 over-approximates (reverse-sound);
/// enabled noise demotes both to AsymptoticOnly.
Soundness classify(const SmoothConfig& cfg);

/// Hull of every smoothed value fed into a smooth operator while evaluating
/// f at t = 0. Its width is a valid range bound for value-free Soft bands.
Interval operator_input_range(const Formula& f, const Signal& s, const SmoothConfig& cfg);

}  // namespace stlsmooth
