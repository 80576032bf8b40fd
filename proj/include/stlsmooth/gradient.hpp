#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stlsmooth/dynamics.hpp"
#include "stlsmooth/formula.hpp"
#include "stlsmooth/signal.hpp"
#include "stlsmooth/smooth_semantics.hpp"

namespace stlsmooth {

/// d smooth_robustness(f, s, t) / d s, blocked per time step ((T+1) q
/// entries). Entries before block t are zero.
std::vector<double> grad_wrt_signal(const Formula& f, const Signal& s, const SmoothConfig& cfg,
                                    int t = 0);

/// ds/du as a dense (T+1) q x (T+1) m matrix; block (t, tau) stacks
/// dy_t/du_tau, dx_t/du_tau and the identity when t == tau.
Mat signal_jacobian(const System& sys, const ControlSequence& u, const Vec& x0);

enum class GradientPath {
  /// Reverse sweep through the dynamics; never forms ds/du.
  Adjoint,
  /// grad_wrt_signal times signal_jacobian.
  Dense,
};

/// d smooth_robustness(f, rollout(sys, u, x0)) / du, ordered u_0, u_1, ...
Vec grad_wrt_controls(const Formula& f, const System& sys, const ControlSequence& u,
                      const Vec& x0, const SmoothConfig& cfg,
                      GradientPath path = GradientPath::Adjoint);

/// Pulls a signal gradient back to the controls with the adjoint recursion.
Vec pull_back_to_controls(const System& sys, const ControlSequence& u, const Mat& states,
                          std::span<const double> signal_grad);

/// Central differences, one coordinate at a time.
std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& objective,
                                     std::span<const double> point, double step = 1e-6);

}  // namespace stlsmooth
