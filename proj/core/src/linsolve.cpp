#include "tdci/linsolve.hpp"

#include <cmath>
#include <string>

namespace tdci {

GmresResult gmres_solve(const OperatorApply& apply_lhs, std::span<const Complex> rhs,
                        std::span<const Complex> guess, const GmresConfig& cfg) {
  if (!(cfg.residual_tol > 0.0)) throw std::invalid_argument("GMRES tolerance must be positive");
  if (rhs.size() != guess.size()) throw std::invalid_argument("GMRES guess/rhs size mismatch");
  const std::size_t n = rhs.size();
  const double rhs_norm = norm(rhs);
  if (!(rhs_norm > 0.0)) throw std::invalid_argument("GMRES right-hand side is zero");

  GmresResult result;
  result.solution.assign(guess.begin(), guess.end());

  StateVector w(n);
  apply_lhs(result.solution, w);
  for (std::size_t i = 0; i < n; ++i) w[i] = rhs[i] - w[i];
  const double r0 = norm(w);
  result.residual = r0 / rhs_norm;
  result.residual_history.push_back(result.residual);
  if (result.residual <= cfg.residual_tol) return result;

  const std::size_t m = cfg.max_iterations;
  std::vector<StateVector> basis;
  basis.reserve(m + 1);
  basis.push_back(w);
  scale(1.0 / r0, basis.back());

  // Column j of the Hessenberg matrix, stored after rotation as R's column.
  std::vector<std::vector<Complex>> r_cols;
  std::vector<double> cs;
  std::vector<Complex> sn;
  std::vector<Complex> g{Complex{r0, 0.0}};

  auto finish = [&](std::size_t k) {
    // Back substitution R y = g, then x += V y.
    std::vector<Complex> y(k);
    for (std::size_t i = k; i-- > 0;) {
      Complex sum = g[i];
      for (std::size_t j = i + 1; j < k; ++j) sum -= r_cols[j][i] * y[j];
      y[i] = sum / r_cols[i][i];
    }
    for (std::size_t j = 0; j < k; ++j) axpy(y[j], basis[j], result.solution);
    result.iterations = k;
  };

  for (std::size_t j = 0; j < m; ++j) {
    apply_lhs(basis[j], w);
    std::vector<Complex> h(j + 2);
    for (std::size_t i = 0; i <= j; ++i) {
      h[i] = inner(basis[i], w);
      axpy(-h[i], basis[i], w);
    }
    const double h_next = norm(w);
    h[j + 1] = h_next;

    for (std::size_t i = 0; i < j; ++i) {
      const Complex x = h[i], y = h[i + 1];
      h[i] = cs[i] * x + sn[i] * y;
      h[i + 1] = -std::conj(sn[i]) * x + cs[i] * y;
    }
    // Rotation zeroing h[j + 1]; c real, G = [[c, s], [-conj(s), c]].
    const Complex a = h[j];
    const double b = std::abs(h[j + 1]);
    const double t = std::hypot(std::abs(a), b);
    double c;
    Complex s;
    if (std::abs(a) == 0.0) {
      c = 0.0;
      s = std::conj(h[j + 1]) / b;
    } else {
      c = std::abs(a) / t;
      s = (a / std::abs(a)) * std::conj(h[j + 1]) / t;
    }
    cs.push_back(c);
    sn.push_back(s);
    h[j] = c * a + s * h[j + 1];
    h[j + 1] = 0.0;
    g.push_back(-std::conj(s) * g[j]);
    g[j] = c * g[j];
    h.pop_back();
    r_cols.push_back(std::move(h));

    result.residual = std::abs(g[j + 1]) / rhs_norm;
    result.residual_history.push_back(result.residual);
    if (!std::isfinite(result.residual)) break;
    if (result.residual <= cfg.residual_tol || h_next == 0.0) {
      finish(j + 1);
      return result;
    }
    basis.push_back(w);
    scale(1.0 / h_next, basis.back());
  }
  throw GmresNonConvergence("GMRES did not reach relative residual " +
                                std::to_string(cfg.residual_tol) + " in " +
                                std::to_string(m) + " iterations (last " +
                                std::to_string(result.residual) + ")",
                            result.residual_history);
}

}  // namespace tdci
