#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stlsmooth/interval.hpp"

namespace stlsmooth {

/// A named differentiable function mu of one composite sample s_t together
/// with an optional noise band [L(s_t), U(s_t)] on its measured value.
///
/// The noise band never changes the value of mu. It widens the certified
/// error interval only.
class Predicate {
 public:
  enum class Kind { Affine, Ball, Custom };

  using ValueFn = std::function<double(std::span<const double>)>;
  /// Writes d mu / d s_t into the output span (length q).
  using GradFn = std::function<void(std::span<const double>, std::span<double>)>;
  using NoiseFn = std::function<Interval(std::span<const double>)>;

  /// mu(s) = c . s + b
  static Predicate affine(std::string name, std::vector<double> c, double b);

  /// mu(s) = radius^2 - |s[dims] - center|^2, positive inside the ball.
  static Predicate ball(std::string name, std::size_t q, std::vector<std::size_t> dims,
                        std::vector<double> center, double radius);

  static Predicate custom(std::string name, std::size_t q, ValueFn mu, GradFn grad);

  Predicate with_noise(Interval constant) const;
  Predicate with_noise(NoiseFn noise) const;

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  /// Composite sample length q this predicate reads.
  std::size_t dim() const { return q_; }

  double value(std::span<const double> sample) const;
  void gradient(std::span<const double> sample, std::span<double> out) const;
  /// out += scale * d mu / d s_t
  void accumulate_gradient(std::span<const double> sample, double scale,
                           std::span<double> out) const;

  /// Noise band at a sample; throws NumericError when lo > hi.
  Interval noise(std::span<const double> sample) const;
  bool has_constant_noise() const { return !noise_fn_; }
  /// Constant band; meaningful only when has_constant_noise().
  Interval constant_noise() const { return noise_; }
  bool is_noiseless() const { return !noise_fn_ && noise_.lo == 0.0 && noise_.hi == 0.0; }

  /// Affine coefficients (empty for other kinds).
  const std::vector<double>& coefficients() const { return coeffs_; }
  double bias() const { return bias_; }

 private:
  Predicate() = default;

  std::string name_;
  Kind kind_ = Kind::Custom;
  std::size_t q_ = 0;
  std::vector<double> coeffs_;
  double bias_ = 0.0;
  std::vector<std::size_t> dims_;
  std::vector<double> center_;
  double radius_ = 0.0;
  ValueFn mu_;
  GradFn grad_;
  Interval noise_{};
  NoiseFn noise_fn_;
};

using PredicatePtr = std::shared_ptr<const Predicate>;

}  // namespace stlsmooth
