#include "tdci/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdci/krylov.hpp"
#include "tdci/magnus.hpp"
#include "tdci/runge_kutta.hpp"

namespace tdci {

namespace {

constexpr double kGrowFactor = 1.1;
constexpr double kKrylovShrinkFraction = 0.8;

// RK8 controller: 0.9 (tol/err)^(1/8 - 0.2 beta) (err_prev/tol)^beta, factor
// clamped to [0.2, 5] and to at most 1 right after a rejection.
constexpr double kRkSafety = 0.9;
constexpr double kRkStabilisation = 0.04;
constexpr double kRkMinFactor = 0.2;
constexpr double kRkMaxFactor = 5.0;

void require_state(const SparseOperator& a, const SparseOperator& b,
                   std::span<const Complex> psi0, TimeSpan span) {
  if (a.dimension() != b.dimension() || a.dimension() != psi0.size()) {
    throw std::invalid_argument("operator and state dimensions differ");
  }
  if (!(span.end > span.begin)) throw std::invalid_argument("empty time span");
}

std::string describe_underflow(const char* method, double t, double dt) {
  std::ostringstream msg;
  msg << method << ": step size " << dt << " fell below " << kMinStep << " at t = " << t;
  return msg.str();
}

// Cost accounting, attempt log and observable samples for one run.
class RunLog {
 public:
  RunLog(std::string method, const SparseOperator& a, const SparseOperator& b,
         std::function<double(double)> drive, const SampleOptions& samples)
      : a_(a), b_(b), drive_(std::move(drive)), samples_(samples), work_(a.dimension()) {
    record_.method = std::move(method);
  }

  MatvecCounter& counter() { return counter_; }

  void begin_attempt() { mark_ = counter_.count(); }

  void reject(double t, double dt, std::size_t dk, double error) {
    const auto spent = counter_.count() - mark_;
    record_.attempts.push_back({t, dt, dk, error, false, spent, 0});
    record_.matvecs_rejected += spent;
    ++record_.steps_rejected;
  }

  void accept(double t, double dt, std::size_t dk, double error, std::size_t linear = 0) {
    const auto spent = counter_.count() - mark_;
    record_.attempts.push_back({t, dt, dk, error, true, spent, linear});
    ++record_.steps_accepted;
  }

  void sample(double t, std::span<const Complex> psi, double dt, std::size_t dk) {
    if (!samples_.enabled) return;
    a_.multiply(psi, work_);
    const double ea = inner(psi, work_).real();
    b_.multiply(psi, work_);
    const double eb = inner(psi, work_).real();
    record_.samples.push_back({t, eb / samples_.particles, norm(psi), ea + drive_(t) * eb, dt, dk,
                               counter_.count()});
  }

  PropagationResult finish(StateVector state) {
    record_.matvecs_total = counter_.count();
    return {std::move(state), std::move(record_)};
  }

 private:
  const SparseOperator& a_;
  const SparseOperator& b_;
  std::function<double(double)> drive_;
  SampleOptions samples_;
  StateVector work_;
  MatvecCounter counter_;
  std::uint64_t mark_ = 0;
  PropagationRecord record_;
};

double initial_step(TimeSpan span, const AdaptiveOptions& opts) {
  return std::min(span.end - span.begin, opts.max_dt);
}

// Lanczos-method controller including the Krylov-dimension guard.
double next_lanczos_step(double error, double tol, double dt, std::size_t dk,
                         std::size_t dk_max, double max_dt) {
  double next = adjust_step(error, tol, dt);
  if (static_cast<double>(dk) > kKrylovShrinkFraction * static_cast<double>(dk_max)) {
    next = dt / kGrowFactor;
  }
  return std::min(next, max_dt);
}

// Half the width of a Gershgorin interval enclosing the spectrum of op, a
// bound on ||op - c|| for the interval's midpoint c.
double spectral_half_width(const SparseOperator& op) {
  const auto off = op.row_offsets();
  const auto col = op.columns();
  const auto val = op.values();
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < op.dimension(); ++i) {
    double centre = 0.0, radius = 0.0;
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (col[k] == i) centre = val[k];
      else radius += std::abs(val[k]);
    }
    lo = std::min(lo, centre - radius);
    hi = std::max(hi, centre + radius);
  }
  return op.dimension() == 0 ? 0.0 : 0.5 * (hi - lo);
}

// Simpson's rule over the whole step against the two-panel composite rule.
// Scaled by the half width of B it bounds the state error caused by the
// quadrature of f alone, which the Omega_1 reference cannot see.
double drive_quadrature_error(const DriveFunction& f, double t, double h, double b_half_width) {
  const double whole = first_order_generator(f, t, h).b_weight;
  const double halves = first_order_generator(f, t, 0.5 * h).b_weight +
                        first_order_generator(f, t + 0.5 * h, 0.5 * h).b_weight;
  return b_half_width * std::abs(whole - halves);
}

OdeRhs schrodinger_rhs(const SparseOperator& a, const SparseOperator& b, const DriveFunction& f,
                       MatvecCounter& counter) {
  return [&a, &b, &f, &counter](double t, std::span<const Complex> y, std::span<Complex> dydt) {
    a.multiply(y, dydt);
    const double ft = f(t);
    if (ft != 0.0) b.multiply_add(ft, y, dydt);
    for (auto& z : dydt) z = Complex{z.imag(), -z.real()};  // -i z
    counter.add();
  };
}

}  // namespace

double adjust_step(double error, double tol, double dt, double remaining) {
  const double next = (error < 0.5 * tol) ? dt * kGrowFactor : dt / kGrowFactor;
  return std::min(next, remaining);
}

AdaptiveKrylovStep adaptive_krylov_step(const OperatorApply& op, std::span<const Complex> psi,
                                        double tol, std::size_t max_dimension) {
  if (max_dimension < 2) throw std::invalid_argument("Krylov dimension cap must be at least 2");
  LanczosProcess lanczos(op, psi);
  AdaptiveKrylovStep out;
  while (true) {
    lanczos.extend();
    const KrylovSpace& space = lanczos.space();
    const std::size_t m = space.dimension();
    if (m < 2 && !space.breakdown) continue;
    const auto eig = eigen_tridiagonal(space);
    const bool small = last_coefficient(space, eig, 1.0) <= tol;
    if (small || m >= max_dimension) {
      out.krylov_dimension = m;
      out.converged = small;
      if (small) out.state = propagate_in_krylov(space, eig, 1.0).state;
      return out;
    }
  }
}

PropagationResult propagate_alc(const SparseOperator& a, const SparseOperator& b, double f,
                                std::span<const Complex> psi0, TimeSpan span,
                                const AdaptiveOptions& opts) {
  require_state(a, b, psi0, span);
  if (opts.krylov_dimension < 1) throw std::invalid_argument("Krylov dimension must be positive");
  RunLog log("alc", a, b, [f](double) { return f; }, opts.samples);
  MatvecCounter& counter = log.counter();
  const OperatorApply hamiltonian = [&](std::span<const Complex> x, std::span<Complex> out) {
    a.multiply(x, out);
    if (f != 0.0) b.multiply_add(f, x, out);
    counter.add();
  };

  StateVector psi(psi0.begin(), psi0.end());
  double t = span.begin;
  log.sample(t, psi, 0.0, 0);
  while (t < span.end) {
    log.begin_attempt();
    const KrylovSpace space = build_krylov(hamiltonian, psi, opts.krylov_dimension);
    const auto eig = eigen_tridiagonal(space);
    // Bisect the remaining interval: candidates (end - t) / 2^k.
    const double remaining = span.end - t;
    double dt = remaining;
    int halvings = 0;
    while (dt > opts.max_dt || last_coefficient(space, eig, dt) > opts.tolerance) {
      dt = std::ldexp(remaining, -(++halvings));
      if (dt < kMinStep) throw PropagationError(describe_underflow("alc", t, dt));
    }
    const double c_last = last_coefficient(space, eig, dt);
    psi = propagate_in_krylov(space, eig, dt).state;
    t = (halvings == 0) ? span.end : t + dt;
    log.accept(t - dt, dt, space.dimension(), c_last);
    log.sample(t, psi, dt, space.dimension());
  }
  return log.finish(std::move(psi));
}

PropagationResult propagate_al1(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts) {
  require_state(a, b, psi0, span);
  RunLog log("al1", a, b, [&f](double t) { return f(t); }, opts.samples);
  MatvecCounter& counter = log.counter();
  const double tol = opts.tolerance;
  const std::size_t dk_max = opts.krylov_dimension;

  auto krylov_step = [&](std::span<const Complex> psi, double t, double dt) {
    const auto op = make_generator_apply(a, b, first_order_generator(f, t, dt), counter);
    return adaptive_krylov_step(op, psi, tol, dk_max);
  };

  StateVector psi(psi0.begin(), psi0.end());
  double t = span.begin;
  double dt = initial_step(span, opts);
  log.sample(t, psi, 0.0, 0);
  while (t < span.end) {
    const bool last = dt >= span.end - t;
    const double h = last ? span.end - t : dt;
    if (h < kMinStep) throw PropagationError(describe_underflow("al1", t, h));
    log.begin_attempt();

    const auto full = krylov_step(psi, t, h);
    if (!full.converged) {
      log.reject(t, h, full.krylov_dimension, INFINITY);
      dt = 0.5 * h;
      continue;
    }
    const auto first_half = krylov_step(psi, t, 0.5 * h);
    if (!first_half.converged) {
      log.reject(t, h, first_half.krylov_dimension, INFINITY);
      dt = 0.5 * h;
      continue;
    }
    auto second_half = krylov_step(first_half.state, t + 0.5 * h, 0.5 * h);
    const std::size_t dk = std::max({full.krylov_dimension, first_half.krylov_dimension,
                                     second_half.krylov_dimension});
    if (!second_half.converged) {
      log.reject(t, h, dk, INFINITY);
      dt = 0.5 * h;
      continue;
    }
    const double error = distance(full.state, second_half.state);
    if (error > tol) {
      log.reject(t, h, dk, error);
      dt = 0.5 * h;
      continue;
    }
    psi = std::move(second_half.state);
    log.accept(t, h, dk, error);
    t = last ? span.end : t + h;
    log.sample(t, psi, h, dk);
    dt = next_lanczos_step(error, tol, h, dk, dk_max, opts.max_dt);
  }
  return log.finish(std::move(psi));
}

PropagationResult propagate_al2(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts) {
  require_state(a, b, psi0, span);
  RunLog log("al2", a, b, [&f](double t) { return f(t); }, opts.samples);
  MatvecCounter& counter = log.counter();
  const double tol = opts.tolerance;
  const std::size_t dk_max = opts.krylov_dimension;
  const double b_half_width = f.is_constant() ? 0.0 : spectral_half_width(b);

  StateVector psi(psi0.begin(), psi0.end());
  double t = span.begin;
  double dt = initial_step(span, opts);
  log.sample(t, psi, 0.0, 0);
  while (t < span.end) {
    const bool last = dt >= span.end - t;
    const double h = last ? span.end - t : dt;
    if (h < kMinStep) throw PropagationError(describe_underflow("al2", t, h));
    log.begin_attempt();

    const double quadrature_error = drive_quadrature_error(f, t, h, b_half_width);
    if (quadrature_error > tol) {
      log.reject(t, h, 0, quadrature_error);
      dt = 0.5 * h;
      continue;
    }

    const auto accurate_op = make_generator_apply(a, b, second_order_generator(f, t, h), counter);
    auto accurate = adaptive_krylov_step(accurate_op, psi, tol, dk_max);
    if (!accurate.converged) {
      log.reject(t, h, accurate.krylov_dimension, INFINITY);
      dt = 0.5 * h;
      continue;
    }
    const auto reference_op = make_generator_apply(a, b, first_order_generator(f, t, h), counter);
    const auto reference = adaptive_krylov_step(reference_op, psi, tol, dk_max);
    const std::size_t dk = std::max(accurate.krylov_dimension, reference.krylov_dimension);
    if (!reference.converged) {
      log.reject(t, h, dk, INFINITY);
      dt = 0.5 * h;
      continue;
    }
    const double error = std::max(distance(accurate.state, reference.state), quadrature_error);
    if (error > tol) {
      log.reject(t, h, dk, error);
      dt = 0.5 * h;
      continue;
    }
    psi = std::move(accurate.state);
    log.accept(t, h, dk, error);
    t = last ? span.end : t + h;
    log.sample(t, psi, h, dk);
    dt = next_lanczos_step(error, tol, h, dk, dk_max, opts.max_dt);
  }
  return log.finish(std::move(psi));
}

PropagationResult propagate_rk8(const SparseOperator& a, const SparseOperator& b,
                                const DriveFunction& f, std::span<const Complex> psi0,
                                TimeSpan span, const AdaptiveOptions& opts) {
  require_state(a, b, psi0, span);
  RunLog log("rk8", a, b, [&f](double t) { return f(t); }, opts.samples);
  const OdeRhs rhs = schrodinger_rhs(a, b, f, log.counter());
  const double tol = opts.tolerance;

  StateVector psi(psi0.begin(), psi0.end());
  double t = span.begin;
  double dt = initial_step(span, opts);
  bool after_reject = false;
  double previous_ratio = 1e-4;
  log.sample(t, psi, 0.0, 0);
  while (t < span.end) {
    const bool last = dt >= span.end - t;
    const double h = last ? span.end - t : dt;
    if (h < kMinStep) throw PropagationError(describe_underflow("rk8", t, h));
    log.begin_attempt();

    auto step = rk87_step(rhs, t, psi, h);
    const double error = distance(step.high, step.low);
    if (!(error <= tol)) {
      log.reject(t, h, 0, error);
      dt = 0.5 * h;
      after_reject = true;
      continue;
    }
    psi = std::move(step.high);
    log.accept(t, h, 0, error);
    t = last ? span.end : t + h;
    log.sample(t, psi, h, 0);

    const double ratio = std::max(error / tol, 1e-4);
    double factor = kRkSafety * std::pow(ratio, -(1.0 / 8.0 - 0.2 * kRkStabilisation)) *
                    std::pow(previous_ratio, kRkStabilisation);
    factor = std::clamp(factor, kRkMinFactor, after_reject ? 1.0 : kRkMaxFactor);
    previous_ratio = ratio;
    after_reject = false;
    dt = std::min(h * factor, opts.max_dt);
  }
  return log.finish(std::move(psi));
}

namespace {

std::size_t fixed_step_count(TimeSpan span, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("fixed step must be positive");
  // Tolerate a span that is an integer multiple of dt up to rounding.
  const double ratio = (span.end - span.begin) / dt;
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9));
}

}  // namespace

PropagationResult propagate_rk4_fixed(const SparseOperator& a, const SparseOperator& b,
                                      const DriveFunction& f, std::span<const Complex> psi0,
                                      TimeSpan span, const FixedStepOptions& opts) {
  require_state(a, b, psi0, span);
  RunLog log("rk4", a, b, [&f](double t) { return f(t); }, opts.samples);
  const OdeRhs rhs = schrodinger_rhs(a, b, f, log.counter());
  const std::size_t steps = fixed_step_count(span, opts.dt);

  StateVector psi(psi0.begin(), psi0.end());
  log.sample(span.begin, psi, 0.0, 0);
  double last_sample = span.begin;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = span.begin + static_cast<double>(k) * opts.dt;
    const double h = (k + 1 == steps) ? span.end - t : opts.dt;
    log.begin_attempt();
    psi = rk4_step(rhs, t, psi, h);
    log.accept(t, h, 0, 0.0);
    const double t_next = (k + 1 == steps) ? span.end : t + h;
    if (k + 1 == steps || t_next - last_sample >= opts.samples.interval) {
      log.sample(t_next, psi, h, 0);
      last_sample = t_next;
    }
  }
  return log.finish(std::move(psi));
}

PropagationResult propagate_cn_fixed(const SparseOperator& a, const SparseOperator& b,
                                     const DriveFunction& f, std::span<const Complex> psi0,
                                     TimeSpan span, const FixedStepOptions& opts) {
  require_state(a, b, psi0, span);
  RunLog log("cn", a, b, [&f](double t) { return f(t); }, opts.samples);
  MatvecCounter& counter = log.counter();
  const std::size_t steps = fixed_step_count(span, opts.dt);
  const std::size_t n = psi0.size();

  StateVector psi(psi0.begin(), psi0.end());
  StateVector h_psi(n), rhs(n), guess(n);
  log.sample(span.begin, psi, 0.0, 0);
  double last_sample = span.begin;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = span.begin + static_cast<double>(k) * opts.dt;
    const double h = (k + 1 == steps) ? span.end - t : opts.dt;
    log.begin_attempt();

    const double f0 = f(t);
    a.multiply(psi, h_psi);
    if (f0 != 0.0) b.multiply_add(f0, psi, h_psi);
    counter.add();
    // rhs = (1 - i h/2 H(t)) psi; guess = explicit Euler (1 - i h H(t)) psi.
    for (std::size_t i = 0; i < n; ++i) {
      const Complex minus_i_hpsi{h_psi[i].imag(), -h_psi[i].real()};
      rhs[i] = psi[i] + 0.5 * h * minus_i_hpsi;
      guess[i] = psi[i] + h * minus_i_hpsi;
    }
    const double f1 = f(t + h);
    const OperatorApply lhs = [&](std::span<const Complex> x, std::span<Complex> out) {
      a.multiply(x, out);
      if (f1 != 0.0) b.multiply_add(f1, x, out);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = x[i] + Complex{-0.5 * h * out[i].imag(), 0.5 * h * out[i].real()};
      }
      counter.add();
    };
    GmresResult solved;
    try {
      solved = gmres_solve(lhs, rhs, guess, opts.gmres);
    } catch (const GmresNonConvergence& e) {
      std::ostringstream msg;
      msg << "cn: step at t = " << t << " failed: " << e.what();
      throw PropagationError(msg.str());
    }
    psi = std::move(solved.solution);
    log.accept(t, h, 0, solved.residual, solved.iterations);
    const double t_next = (k + 1 == steps) ? span.end : t + h;
    if (k + 1 == steps || t_next - last_sample >= opts.samples.interval) {
      log.sample(t_next, psi, h, 0);
      last_sample = t_next;
    }
  }
  return log.finish(std::move(psi));
}

}  // namespace tdci
