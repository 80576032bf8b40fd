#include "stlsmooth/gradient.hpp"

#include "detail/plan.hpp"
#include "stlsmooth/error.hpp"

namespace stlsmooth {

std::vector<double> grad_wrt_signal(const Formula& f, const Signal& s, const SmoothConfig& cfg,
                                    int t) {
  cfg.validate();
  detail::require_nnf(f);
  const detail::Plan plan = detail::compile(f, &cfg);
  detail::check_horizon(plan, s, t);
  detail::SmoothEvaluator ev(plan, s, cfg.srm, cfg.noise_enabled);
  std::vector<double> grad(s.data().size(), 0.0);
  ev.backward(t, grad);
  return grad;
}

Mat signal_jacobian(const System& sys, const ControlSequence& u, const Vec& x0) {
  const Mat x = simulate_states(sys, u, x0);
  const auto n = static_cast<Eigen::Index>(sys.n());
  const auto m = static_cast<Eigen::Index>(sys.m());
  const auto p = static_cast<Eigen::Index>(sys.p());
  const auto q = p + n + m;
  const Eigen::Index len = u.cols();
  Mat J = Mat::Zero(len * q, len * m);
  // S holds dx_t/du_tau for every tau side by side (n x len m).
  Mat S = Mat::Zero(n, len * m);
  for (Eigen::Index t = 0; t < len; ++t) {
    const Vec xt = x.col(t), ut = u.col(t);
    const Mat gx = sys.jac_g_x(xt, ut);
    for (Eigen::Index tau = 0; tau < t; ++tau) {
      J.block(t * q, tau * m, p, m) = gx * S.middleCols(tau * m, m);
      J.block(t * q + p, tau * m, n, m) = S.middleCols(tau * m, m);
    }
    J.block(t * q, t * m, p, m) = sys.jac_g_u(xt, ut);
    J.block(t * q + p + n, t * m, m, m).setIdentity();
    if (t + 1 < len) {
      const Mat fx = sys.jac_f_x(xt, ut);
      S.leftCols(t * m) = fx * S.leftCols(t * m);
      S.middleCols(t * m, m) = sys.jac_f_u(xt, ut);
    }
  }
  return J;
}

Vec pull_back_to_controls(const System& sys, const ControlSequence& u, const Mat& states,
                          std::span<const double> signal_grad) {
  const auto n = static_cast<Eigen::Index>(sys.n());
  const auto m = static_cast<Eigen::Index>(sys.m());
  const auto p = static_cast<Eigen::Index>(sys.p());
  const auto q = p + n + m;
  const Eigen::Index len = u.cols();
  if (static_cast<Eigen::Index>(signal_grad.size()) != len * q) {
    throw DimensionError("signal gradient has the wrong length");
  }
  Vec out(len * m);
  Vec lambda = Vec::Zero(n);  // d rho / d x_{t+1}
  for (Eigen::Index t = len - 1; t >= 0; --t) {
    const Eigen::Map<const Vec> gy(signal_grad.data() + t * q, p);
    const Eigen::Map<const Vec> gx(signal_grad.data() + t * q + p, n);
    const Eigen::Map<const Vec> gu(signal_grad.data() + t * q + p + n, m);
    const Vec xt = states.col(t), ut = u.col(t);
    Vec du = gu + sys.jac_g_u(xt, ut).transpose() * gy;
    Vec lam = gx + sys.jac_g_x(xt, ut).transpose() * gy;
    if (t + 1 < len) {
      du += sys.jac_f_u(xt, ut).transpose() * lambda;
      lam += sys.jac_f_x(xt, ut).transpose() * lambda;
    }
    out.segment(t * m, m) = du;
    lambda = lam;
  }
  return out;
}

Vec grad_wrt_controls(const Formula& f, const System& sys, const ControlSequence& u,
                      const Vec& x0, const SmoothConfig& cfg, GradientPath path) {
  const Signal s = rollout(sys, u, x0);
  const std::vector<double> gs = grad_wrt_signal(f, s, cfg, 0);
  if (path == GradientPath::Dense) {
    const Eigen::Map<const Eigen::RowVectorXd> row(gs.data(), static_cast<Eigen::Index>(gs.size()));
    return (row * signal_jacobian(sys, u, x0)).transpose();
  }
  return pull_back_to_controls(sys, u, simulate_states(sys, u, x0), gs);
}

std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& objective,
                                     std::span<const double> point, double step) {
  if (!(step > 0.0)) throw ConfigError("finite-difference step must be positive");
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + step;
    const double up = objective(x);
    x[i] = orig - step;
    const double down = objective(x);
    x[i] = orig;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace stlsmooth
