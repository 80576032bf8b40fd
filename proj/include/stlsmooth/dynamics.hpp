#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "stlsmooth/signal.hpp"

namespace stlsmooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Discrete-time system x_{t+1} = f(x_t, u_t), y_t = g(x_t, u_t).
/// Evaluators must be re-entrant.
class System {
 public:
  using Map = std::function<Vec(const Vec& x, const Vec& u)>;
  using Jacobian = std::function<Mat(const Vec& x, const Vec& u)>;

  struct Parts {
    std::size_t n = 0, m = 0, p = 0;
    Map f, g;
    Jacobian f_x, f_u, g_x, g_u;
  };

  explicit System(Parts parts);

  std::size_t n() const { return parts_.n; }
  std::size_t m() const { return parts_.m; }
  std::size_t p() const { return parts_.p; }

  Vec f(const Vec& x, const Vec& u) const { return parts_.f(x, u); }
  Vec g(const Vec& x, const Vec& u) const { return parts_.g(x, u); }
  Mat jac_f_x(const Vec& x, const Vec& u) const { return parts_.f_x(x, u); }
  Mat jac_f_u(const Vec& x, const Vec& u) const { return parts_.f_u(x, u); }
  Mat jac_g_x(const Vec& x, const Vec& u) const { return parts_.g_x(x, u); }
  Mat jac_g_u(const Vec& x, const Vec& u) const { return parts_.g_u(x, u); }

 private:
  Parts parts_;
};

/// Column t holds u_t; T + 1 columns.
using ControlSequence = Mat;

/// States x_0..x_T (columns) obtained by iterating f from x0.
Mat simulate_states(const System& sys, const ControlSequence& u, const Vec& x0);

/// Composite signal with samples ordered (y_t, x_t, u_t).
/// Throws DimensionError on shape mismatch, NumericError on non-finite states.
Signal rollout(const System& sys, const ControlSequence& u, const Vec& x0);

/// Velocity-controlled point: x' = x + dt u, y = x (n = m = p = 2).
System single_integrator_2d(double dt = 1.0);
/// State (px, py, vx, vy), acceleration input, position output.
System double_integrator_2d(double dt = 1.0);
System linear_system(Mat A, Mat B, Mat C, Mat D);

}  // namespace stlsmooth
