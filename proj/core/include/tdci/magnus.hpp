#pragma once

#include "tdci/krylov.hpp"
#include "tdci/model1d.hpp"
#include "tdci/sparse.hpp"

namespace tdci {

/// Hermitian form M of a Magnus exponent, exp(Omega) = exp(-i M), for
/// H(t) = A + f(t) B:
///
///   M = a_weight A + b_weight B + i commutator_weight [A, B]
///
/// i Omega_1 is real symmetric and i Omega_2 is a real multiple of the
/// Hermitian i [A, B], so Lanczos on M yields a real tridiagonal matrix.
struct MagnusGenerator {
  double a_weight = 0.0;
  double b_weight = 0.0;
  double commutator_weight = 0.0;
  /// Whether applications include the commutator term (two matvec units
  /// instead of one), even when its weight is zero.
  bool second_order = false;
};

/// Simpson-rule first-order exponent over [t, t + dt]:
/// dt A + dt/6 (f(t) + 4 f(t + dt/2) + f(t + dt)) B.
MagnusGenerator first_order_generator(const DriveFunction& f, double t, double dt);

/// First plus second order, the latter dt^2/12 (f(t + dt) - f(t)) [A, B].
MagnusGenerator second_order_generator(const DriveFunction& f, double t, double dt);

/// Callback computing M x with matvec accounting. The returned callable keeps
/// references to a, b and counter and owns its own workspace.
OperatorApply make_generator_apply(const SparseOperator& a, const SparseOperator& b,
                                   const MagnusGenerator& generator, MatvecCounter& counter);

}  // namespace tdci
