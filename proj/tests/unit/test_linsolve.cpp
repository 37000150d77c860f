#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdci/linsolve.hpp"

using tdci::Complex;
using tdci::StateVector;

namespace {

tdci::OperatorApply dense_apply(const Eigen::MatrixXcd& m, int* calls) {
  return [m, calls](std::span<const Complex> x, std::span<Complex> out) {
    const Eigen::VectorXcd y = m * oracle::to_eigen(x);
    std::copy(y.data(), y.data() + y.size(), out.begin());
    ++*calls;
  };
}

}  // namespace

TEST(Gmres, IdentityConvergesInOneIteration) {
  std::mt19937_64 rng(41);
  int calls = 0;
  const auto rhs = oracle::random_state(10, rng, false);
  const StateVector guess(10);
  const auto res = tdci::gmres_solve(dense_apply(Eigen::MatrixXcd::Identity(10, 10), &calls), rhs, guess);
  EXPECT_EQ(res.iterations, 1u);
  EXPECT_EQ(calls, 2);
  EXPECT_LT(tdci::distance(res.solution, rhs), 1e-14);
}

TEST(Gmres, ExactGuessNeedsNoIterations) {
  std::mt19937_64 rng(42);
  int calls = 0;
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(6, 6) + 0.1 * oracle::random_hermitian(6, rng);
  const auto x = oracle::random_state(6, rng);
  const auto rhs = oracle::from_eigen(m * oracle::to_eigen(x));
  const auto res = tdci::gmres_solve(dense_apply(m, &calls), rhs, x);
  EXPECT_EQ(res.iterations, 0u);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(res.solution, x);
}

TEST(Gmres, RandomSystemMatchesDirectSolve) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd m(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) m(i, j) = Complex{g(rng), g(rng)} / std::sqrt(20.0);
    m += 3.0 * Eigen::MatrixXcd::Identity(20, 20);
    const auto rhs = oracle::random_state(20, rng);
    int calls = 0;
    tdci::GmresConfig cfg;
    cfg.residual_tol = 1e-10;
    const auto res = tdci::gmres_solve(dense_apply(m, &calls), rhs, StateVector(20), cfg);
    const Eigen::VectorXcd direct = m.fullPivLu().solve(oracle::to_eigen(rhs));
    const double cond = 1.0 / m.jacobiSvd().singularValues().tail(1)(0) * m.norm();
    EXPECT_LT((oracle::to_eigen(res.solution) - direct).norm(), 1e-10 * cond * direct.norm());
    const Eigen::VectorXcd r = m * oracle::to_eigen(res.solution) - oracle::to_eigen(rhs);
    EXPECT_LE(r.norm(), 1e-10 * 1.0001);
    EXPECT_EQ(static_cast<std::size_t>(calls), res.iterations + 1);
    for (std::size_t k = 1; k < res.residual_history.size(); ++k) {
      EXPECT_LE(res.residual_history[k], res.residual_history[k - 1] * (1.0 + 1e-12));
    }
  }
}

TEST(Gmres, NonConvergenceCarriesHistory) {
  std::mt19937_64 rng(44);
  // Eigenvalues spread around the origin need many iterations.
  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(50, -1.0, 1.0);
  d(25) = 1e-3;
  const Eigen::MatrixXcd m = d.cast<Complex>().asDiagonal();
  int calls = 0;
  tdci::GmresConfig cfg;
  cfg.max_iterations = 3;
  try {
    tdci::gmres_solve(dense_apply(m, &calls), oracle::random_state(50, rng), StateVector(50), cfg);
    FAIL() << "expected non-convergence";
  } catch (const tdci::GmresNonConvergence& e) {
    EXPECT_EQ(e.residual_history().size(), 4u);
    EXPECT_GT(e.residual_history().back(), cfg.residual_tol);
  }
}

TEST(Gmres, RejectsBadInput) {
  int calls = 0;
  const auto op = dense_apply(Eigen::MatrixXcd::Identity(3, 3), &calls);
  EXPECT_THROW(tdci::gmres_solve(op, StateVector(3), StateVector(3)), std::invalid_argument);
  EXPECT_THROW(tdci::gmres_solve(op, StateVector(3, 1.0), StateVector(2)), std::invalid_argument);
  tdci::GmresConfig cfg;
  cfg.residual_tol = 0.0;
  EXPECT_THROW(tdci::gmres_solve(op, StateVector(3, 1.0), StateVector(3), cfg), std::invalid_argument);
}
