#pragma once

#include <functional>
#include <span>

#include "tdci/state.hpp"

namespace tdci {

/// dy/dt = rhs(t, y), written into dydt.
using OdeRhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;

/// Prince-Dormand RK8(7)13M: 13 stages, 8th-order solution with an embedded
/// 7th-order companion.
struct EmbeddedStep {
  StateVector high;
  StateVector low;
};

EmbeddedStep rk87_step(const OdeRhs& rhs, double t, std::span<const Complex> y, double h);

/// Classical four-stage Runge-Kutta.
StateVector rk4_step(const OdeRhs& rhs, double t, std::span<const Complex> y, double h);

namespace rk87 {

inline constexpr int kStages = 13;

/// Butcher tableau, exposed for consistency checks.
struct Tableau {
  double c[kStages];
  double a[kStages][kStages];
  double b_high[kStages];
  double b_low[kStages];
};

const Tableau& tableau();

}  // namespace rk87

}  // namespace tdci
