#include "stlsmooth/predicate.hpp"

#include <cmath>

#include "stlsmooth/error.hpp"

namespace stlsmooth {
namespace {

void check_dim(const Predicate& p, std::span<const double> sample) {
  if (sample.size() != p.dim()) {
    throw DimensionError("predicate '" + p.name() + "' expects samples of length " +
                         std::to_string(p.dim()) + ", got " +
                         std::to_string(sample.size()));
  }
}

}  // namespace

Predicate Predicate::affine(std::string name, std::vector<double> c, double b) {
  if (c.empty()) throw ConfigError("affine predicate '" + name + "' has no coefficients");
  for (double v : c) {
    if (!std::isfinite(v)) throw NumericError("affine predicate '" + name + "' has a non-finite coefficient");
  }
  if (!std::isfinite(b)) throw NumericError("affine predicate '" + name + "' has a non-finite bias");
  Predicate p;
  p.name_ = std::move(name);
  p.kind_ = Kind::Affine;
  p.q_ = c.size();
  p.coeffs_ = std::move(c);
  p.bias_ = b;
  return p;
}

Predicate Predicate::ball(std::string name, std::size_t q, std::vector<std::size_t> dims,
                          std::vector<double> center, double radius) {
  if (dims.empty() || dims.size() != center.size()) {
    throw DimensionError("ball predicate '" + name + "': dims and center lengths differ");
  }
  for (std::size_t d : dims) {
    if (d >= q) throw DimensionError("ball predicate '" + name + "': dimension index out of range");
  }
  if (!(radius > 0.0)) throw ConfigError("ball predicate '" + name + "': radius must be positive");
  Predicate p;
  p.name_ = std::move(name);
  p.kind_ = Kind::Ball;
  p.q_ = q;
  p.dims_ = std::move(dims);
  p.center_ = std::move(center);
  p.radius_ = radius;
  return p;
}

Predicate Predicate::custom(std::string name, std::size_t q, ValueFn mu, GradFn grad) {
  if (!mu || !grad) throw ConfigError("custom predicate '" + name + "' needs mu and its gradient");
  Predicate p;
  p.name_ = std::move(name);
  p.kind_ = Kind::Custom;
  p.q_ = q;
  p.mu_ = std::move(mu);
  p.grad_ = std::move(grad);
  return p;
}

Predicate Predicate::with_noise(Interval constant) const {
  if (!(constant.lo <= constant.hi)) {
    throw ConfigError("noise band of '" + name_ + "' has lo > hi");
  }
  Predicate p = *this;
  p.noise_ = constant;
  p.noise_fn_ = nullptr;
  return p;
}

Predicate Predicate::with_noise(NoiseFn noise) const {
  Predicate p = *this;
  p.noise_ = {};
  p.noise_fn_ = std::move(noise);
  return p;
}

double Predicate::value(std::span<const double> s) const {
  check_dim(*this, s);
  switch (kind_) {
    case Kind::Affine: {
      double v = bias_;
      for (std::size_t i = 0; i < q_; ++i) v += coeffs_[i] * s[i];
      return v;
    }
    case Kind::Ball: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < dims_.size(); ++i) {
        const double d = s[dims_[i]] - center_[i];
        d2 += d * d;
      }
      return radius_ * radius_ - d2;
    }
    case Kind::Custom:
      return mu_(s);
  }
  return 0.0;
}

void Predicate::gradient(std::span<const double> s, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  accumulate_gradient(s, 1.0, out);
}

void Predicate::accumulate_gradient(std::span<const double> s, double scale,
                                    std::span<double> out) const {
  check_dim(*this, s);
  if (out.size() != q_) throw DimensionError("gradient buffer has the wrong length");
  switch (kind_) {
    case Kind::Affine:
      for (std::size_t i = 0; i < q_; ++i) out[i] += scale * coeffs_[i];
      return;
    case Kind::Ball:
      for (std::size_t i = 0; i < dims_.size(); ++i) {
        out[dims_[i]] += scale * (-2.0 * (s[dims_[i]] - center_[i]));
      }
      return;
    case Kind::Custom: {
      std::vector<double> g(q_, 0.0);
      grad_(s, g);
      for (std::size_t i = 0; i < q_; ++i) out[i] += scale * g[i];
      return;
    }
  }
}

Interval Predicate::noise(std::span<const double> s) const {
  if (!noise_fn_) return noise_;
  const Interval band = noise_fn_(s);
  if (!(band.lo <= band.hi)) {
    throw NumericError("noise band of '" + name_ + "' has lo > hi at a sample");
  }
  return band;
}

}  // namespace stlsmooth
