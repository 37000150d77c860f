#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tdci/state.hpp"

namespace tdci {

/// Writes M x into out. M must be Hermitian; the callback does its own cost
/// accounting.
using OperatorApply = std::function<void(std::span<const Complex> x, std::span<Complex> out)>;

/// Orthonormal Lanczos vectors k_0..k_{m-1} with the tridiagonal projection
/// T = K^dagger M K.
///
/// beta has one entry per vector: beta[j] couples k_j to k_{j+1}, so T uses
/// beta[0..m-2] and beta[m-1] is the norm of the residual leaving the space.
struct KrylovSpace {
  std::vector<StateVector> vectors;
  std::vector<double> alpha;
  std::vector<double> beta;
  /// True when the residual vanished: the space is invariant under M.
  bool breakdown = false;
  /// Norm of the start vector; k_0 is the start vector divided by it.
  double start_norm = 1.0;

  std::size_t dimension() const { return alpha.size(); }
  std::span<const double> off_diagonal() const {
    return std::span<const double>(beta).first(dimension() == 0 ? 0 : dimension() - 1);
  }
};

/// Incremental Lanczos recursion without reorthogonalisation.
///
/// Each extend() costs one application of M. Breakdown is declared when the
/// new residual norm drops below 1e-12 * max(1, max |alpha|).
class LanczosProcess {
 public:
  LanczosProcess(OperatorApply op, std::span<const Complex> start);

  /// Adds the next vector and its diagonal element. Returns false without
  /// applying M once breakdown has been reached.
  bool extend();

  const KrylovSpace& space() const { return space_; }
  KrylovSpace& space() { return space_; }

 private:
  OperatorApply op_;
  KrylovSpace space_;
  StateVector pending_;
  StateVector work_;
  double alpha_scale_ = 1.0;
};

/// Runs up to `dimension` Lanczos steps; stops early on breakdown.
/// Throws std::invalid_argument if the start vector is not normalised to 1e-6
/// and std::runtime_error on NaN.
KrylovSpace build_krylov(const OperatorApply& op, std::span<const Complex> start,
                         std::size_t dimension);

/// Eigen-decomposition T = Q D Q^T of a symmetric tridiagonal matrix.
/// Eigenvalues ascend; each eigenvector's first component above 1e-12 in
/// magnitude is positive.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major n x n

  std::size_t size() const { return values.size(); }
  double q(std::size_t row, std::size_t col) const { return vectors[col * size() + row]; }
};

/// Implicit-shift QL. Throws std::runtime_error after 50 sweeps on one
/// eigenvalue.
TridiagonalEigen eigen_tridiagonal(std::span<const double> alpha, std::span<const double> off_diagonal);

TridiagonalEigen eigen_tridiagonal(const KrylovSpace& space);

/// c(dt) = Q exp(-i dt D) Q^T e_0.
std::vector<Complex> krylov_coefficients(const TridiagonalEigen& eig, double dt);

struct KrylovPropagation {
  StateVector state;
  std::vector<Complex> coefficients;
};

/// exp(-i dt M) applied to the start vector, restricted to the space.
KrylovPropagation propagate_in_krylov(const KrylovSpace& space, const TridiagonalEigen& eig,
                                      double dt);

/// |c_last(dt)|; zero for a space that broke down.
double last_coefficient(const KrylovSpace& space, const TridiagonalEigen& eig, double dt);

}  // namespace tdci
