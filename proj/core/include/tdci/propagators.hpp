#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdci/linsolve.hpp"
#include "tdci/model1d.hpp"
#include "tdci/sparse.hpp"

namespace tdci {

// Time steppers for i d/dt psi = (A + f(t) B) psi. Each run owns a fresh
// MatvecCounter; PropagationRecord::matvecs_total is its final value.

struct TimeSpan {
  double begin = 0.0;
  double end = 10.0;
};

struct SampleOptions {
  bool enabled = true;
  /// Divides <B> to give x_mean.
  double particles = 1.0;
  /// Fixed-step methods only: minimum time between samples (0 samples every
  /// step). Adaptive methods sample every accepted step.
  double interval = 0.0;
};

struct AdaptiveOptions {
  double tolerance = 1e-6;
  /// Fixed Krylov dimension for ALC, upper bound for AL1/AL2.
  std::size_t krylov_dimension = 30;
  /// Upper bound on any step, e.g. for denser output.
  double max_dt = std::numeric_limits<double>::infinity();
  SampleOptions samples;
};

struct FixedStepOptions {
  double dt = 1e-3;
  GmresConfig gmres;
  SampleOptions samples;
};

/// One attempted step, accepted or not.
struct StepAttempt {
  double t = 0.0;
  double dt = 0.0;
  std::size_t krylov_dimension = 0;
  double error = 0.0;
  bool accepted = false;
  std::uint64_t matvecs = 0;
  /// GMRES iterations (Crank-Nicolson only).
  std::size_t linear_iterations = 0;
};

struct Sample {
  double t = 0.0;
  double x_mean = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  double dt = 0.0;
  std::size_t krylov_dimension = 0;
  std::uint64_t matvecs = 0;
};

struct PropagationRecord {
  std::string method;
  std::vector<StepAttempt> attempts;
  std::vector<Sample> samples;
  std::uint64_t matvecs_total = 0;
  std::uint64_t matvecs_rejected = 0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

struct PropagationResult {
  StateVector state;
  PropagationRecord record;
};

class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest step any adaptive method will attempt.
inline constexpr double kMinStep = 1e-12;

/// Step-size rule of the Lanczos methods: grow by 1.1 when error < tol / 2,
/// otherwise shrink by 1.1; the result never exceeds `remaining`.
double adjust_step(double error, double tol, double dt,
                   double remaining = std::numeric_limits<double>::infinity());

/// Constant Hamiltonian A + f B with a fixed Krylov dimension. Each step
/// takes the largest (end - t) / 2^k keeping |c_last| <= tolerance.
PropagationResult propagate_alc(const SparseOperator& a, const SparseOperator& b, double f,
                                std::span<const Complex> psi0, TimeSpan span,
                                const AdaptiveOptions& opts = {});

/// First-order Magnus with step doubling; the two half steps continue the run.
PropagationResult propagate_al1(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts = {});

/// Second-order Magnus checked against first order; the second-order
/// solution continues the run. A step is also rejected, before any matvec,
/// when Simpson's rule for the drive integral disagrees with its two-panel
/// composite by more than tolerance / ||B - c||.
PropagationResult propagate_al2(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts = {});

/// Embedded RK8(7), Euclidean error norm. Rejections halve the step; accepted
/// steps use a stabilised power law (exponents 1/8 - 0.008 and 0.04 on the
/// previous error), clamped to [0.2, 5] and to no growth right after a
/// rejection. krylov_dimension is ignored.
PropagationResult propagate_rk8(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts = {});

/// Classical RK4 with a fixed step; the last step may be shorter.
PropagationResult propagate_rk4_fixed(const SparseOperator& a, const SparseOperator& b,
                                      const DriveFunction& f, std::span<const Complex> psi0,
                                      TimeSpan span, const FixedStepOptions& opts);

/// Crank-Nicolson with GMRES and an explicit-Euler initial guess.
PropagationResult propagate_cn_fixed(const SparseOperator& a, const SparseOperator& b,
                                     const DriveFunction& f, std::span<const Complex> psi0,
                                     TimeSpan span, const FixedStepOptions& opts);

/// Outcome of one exp(-i M) application with a growing Krylov space.
struct AdaptiveKrylovStep {
  StateVector state;
  std::size_t krylov_dimension = 0;
  bool converged = false;
};

/// Grows the Krylov space of M from psi one vector at a time, testing
/// |c_last(1)| <= tol from dimension 2 on, up to max_dimension vectors.
AdaptiveKrylovStep adaptive_krylov_step(const OperatorApply& op, std::span<const Complex> psi,
                                        double tol, std::size_t max_dimension);

}  // namespace tdci
