#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "tdci/sparse.hpp"

namespace tdci {

struct GroundStateOptions {
  /// Converged once ||H psi - E psi|| <= tolerance * max(1, |E|).
  double tolerance = 1e-10;
  std::size_t krylov_dimension = 120;
  std::size_t max_restarts = 500;
};

struct GroundState {
  StateVector state;
  double energy = 0.0;
  double residual = 0.0;
  std::size_t restarts = 0;
  /// Applications of A + f0 B spent by the solver, kept apart from any
  /// propagation budget.
  std::uint64_t matvecs = 0;
};

class GroundStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowest eigenpair of A + f0 B by restarted Lanczos with full
/// reorthogonalisation, started from the normalised uniform vector. The
/// largest-magnitude amplitude of the result is real and positive.
GroundState ground_state(const SparseOperator& a, const SparseOperator& b, double f0,
                         const GroundStateOptions& opts = {});

}  // namespace tdci
