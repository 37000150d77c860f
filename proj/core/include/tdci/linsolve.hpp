#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tdci/krylov.hpp"
#include "tdci/state.hpp"

namespace tdci {

struct GmresConfig {
  /// Stop once ||L x - b|| / ||b|| falls to this value.
  double residual_tol = 1e-6;
  std::size_t max_iterations = 100;
};

struct GmresResult {
  StateVector solution;
  std::size_t iterations = 0;
  /// Relative residual at exit.
  double residual = 0.0;
  /// Relative residual before the first iteration and after each one.
  std::vector<double> residual_history;
};

class GmresNonConvergence : public std::runtime_error {
 public:
  GmresNonConvergence(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}

  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Full (unrestarted) GMRES with modified Gram-Schmidt Arnoldi and Givens
/// rotations. apply_lhs may be any nonsingular complex operator and does its
/// own cost accounting; it is called once for the initial residual and once
/// per iteration.
GmresResult gmres_solve(const OperatorApply& apply_lhs, std::span<const Complex> rhs,
                        std::span<const Complex> guess, const GmresConfig& cfg = {});

}  // namespace tdci
