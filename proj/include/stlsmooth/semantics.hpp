#pragma once

#include "stlsmooth/formula.hpp"
#include "stlsmooth/signal.hpp"

namespace stlsmooth {

/// Exact (non-smooth) robustness of `f` on the suffix of `s` starting at t.
///
/// Negation anywhere is handled as rho(!f) = -rho(f). Until follows
///   max over tau in [t+t1, t+t2] of
///     min{ rho_left(tau), min over delta in [t+t1, tau] of rho_right(delta) }
/// which places the left operand at tau and sweeps the right operand over the
/// prefix window (the reverse of the more common convention).
///
/// Throws HorizonError when t + horizon(f) > T.
double robustness(const Formula& f, const Signal& s, int t = 0);

/// Satisfaction is undefined at zero robustness, reported as Boundary.
enum class Verdict { Sat, Unsat, Boundary };

Verdict satisfies(const Formula& f, const Signal& s);
Verdict verdict_of(double rho);

}  // namespace stlsmooth
