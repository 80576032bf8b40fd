#include "stlsmooth/dynamics.hpp"

#include "stlsmooth/error.hpp"

namespace stlsmooth {

System::System(Parts parts) : parts_(std::move(parts)) {
  if (!parts_.f || !parts_.g || !parts_.f_x || !parts_.f_u || !parts_.g_x || !parts_.g_u) {
    throw ConfigError("system needs f, g and all four Jacobians");
  }
}

Mat simulate_states(const System& sys, const ControlSequence& u, const Vec& x0) {
  if (static_cast<std::size_t>(x0.size()) != sys.n()) {
    throw DimensionError("x0 has length " + std::to_string(x0.size()) + ", system state has " +
                         std::to_string(sys.n()));
  }
  if (static_cast<std::size_t>(u.rows()) != sys.m() || u.cols() < 1) {
    throw DimensionError("control sequence must be " + std::to_string(sys.m()) + " x (T+1)");
  }
  Mat x(sys.n(), u.cols());
  x.col(0) = x0;
  for (Eigen::Index t = 0; t + 1 < u.cols(); ++t) {
    x.col(t + 1) = sys.f(x.col(t), u.col(t));
    if (!x.col(t + 1).allFinite()) {
      throw NumericError("rollout produced a non-finite state at t = " + std::to_string(t + 1));
    }
  }
  return x;
}

Signal rollout(const System& sys, const ControlSequence& u, const Vec& x0) {
  const Mat x = simulate_states(sys, u, x0);
  const SignalDims dims{sys.p(), sys.n(), sys.m()};
  const auto q = static_cast<Eigen::Index>(dims.q());
  std::vector<double> flat(static_cast<std::size_t>(q * u.cols()));
  for (Eigen::Index t = 0; t < u.cols(); ++t) {
    const Vec y = sys.g(x.col(t), u.col(t));
    if (static_cast<std::size_t>(y.size()) != sys.p()) throw DimensionError("output map has the wrong size");
    Eigen::Map<Vec> sample(flat.data() + t * q, q);
    sample << y, x.col(t), u.col(t);
  }
  return Signal(dims, std::move(flat));
}

System linear_system(Mat A, Mat B, Mat C, Mat D) {
  const auto n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() ||
      D.cols() != B.cols()) {
    throw DimensionError("linear system matrices have inconsistent shapes");
  }
  System::Parts s;
  s.n = static_cast<std::size_t>(n);
  s.m = static_cast<std::size_t>(B.cols());
  s.p = static_cast<std::size_t>(C.rows());
  s.f = [A, B](const Vec& x, const Vec& u) -> Vec { return A * x + B * u; };
  s.g = [C, D](const Vec& x, const Vec& u) -> Vec { return C * x + D * u; };
  s.f_x = [A](const Vec&, const Vec&) { return A; };
  s.f_u = [B](const Vec&, const Vec&) { return B; };
  s.g_x = [C](const Vec&, const Vec&) { return C; };
  s.g_u = [D](const Vec&, const Vec&) { return D; };
  return System(std::move(s));
}

System single_integrator_2d(double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  return linear_system(Mat::Identity(2, 2), dt * Mat::Identity(2, 2), Mat::Identity(2, 2),
                       Mat::Zero(2, 2));
}

System double_integrator_2d(double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  Mat A = Mat::Identity(4, 4);
  A(0, 2) = dt;
  A(1, 3) = dt;
  Mat B = Mat::Zero(4, 2);
  B(0, 0) = B(1, 1) = 0.5 * dt * dt;
  B(2, 0) = B(3, 1) = dt;
  Mat C = Mat::Zero(2, 4);
  C(0, 0) = C(1, 1) = 1.0;
  return linear_system(A, B, C, Mat::Zero(2, 2));
}

}  // namespace stlsmooth
