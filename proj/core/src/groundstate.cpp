#include "tdci/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdci/krylov.hpp"

namespace tdci {

namespace {

void orthogonalise(const std::vector<StateVector>& basis, StateVector& w) {
  // Two classical Gram-Schmidt passes.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& v : basis) axpy(-inner(v, w), v, w);
  }
}

void fix_phase(StateVector& psi) {
  const auto largest = std::max_element(psi.begin(), psi.end(), [](Complex x, Complex y) {
    return std::abs(x) < std::abs(y);
  });
  const Complex phase = std::conj(*largest) / std::abs(*largest);
  scale(phase, psi);
  *largest = Complex{largest->real(), 0.0};
}

}  // namespace

GroundState ground_state(const SparseOperator& a, const SparseOperator& b, double f0,
                         const GroundStateOptions& opts) {
  const std::uint64_t n = a.dimension();
  if (n == 0 || b.dimension() != n) throw std::invalid_argument("operator dimensions differ");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (opts.krylov_dimension < 2) throw std::invalid_argument("Krylov dimension must be >= 2");

  MatvecCounter counter;
  auto h = [&](std::span<const Complex> x, std::span<Complex> out) {
    a.multiply(x, out);
    if (f0 != 0.0) b.multiply_add(f0, x, out);
    counter.add();
  };
  const std::size_t m_max = static_cast<std::size_t>(
      std::min<std::uint64_t>(n, opts.krylov_dimension));

  StateVector start(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  StateVector w(n);
  GroundState out;
  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    std::vector<StateVector> basis{start};
    std::vector<double> alpha, beta;
    while (true) {
      h(basis.back(), w);
      alpha.push_back(inner(basis.back(), w).real());
      orthogonalise(basis, w);
      const double bnorm = norm(w);
      const double scale_ref = std::max(1.0, std::abs(alpha.back()));
      if (basis.size() == m_max || bnorm < 1e-12 * scale_ref) break;
      beta.push_back(bnorm);
      basis.push_back(w);
      scale(1.0 / bnorm, basis.back());
    }
    const auto eig = eigen_tridiagonal(alpha, beta);
    StateVector ritz(n);
    for (std::size_t j = 0; j < basis.size(); ++j) axpy(eig.q(j, 0), basis[j], ritz);
    scale(1.0 / norm(ritz), ritz);

    h(ritz, w);
    const double energy = inner(ritz, w).real();
    axpy(-energy, ritz, w);
    out.energy = energy;
    out.residual = norm(w);
    out.restarts = restart;
    out.state = std::move(ritz);
    if (out.residual <= opts.tolerance * std::max(1.0, std::abs(energy))) {
      fix_phase(out.state);
      out.matvecs = counter.count();
      return out;
    }
    start = out.state;
  }
  throw GroundStateError("ground state did not converge after " +
                         std::to_string(opts.max_restarts) + " restarts (residual " +
                         std::to_string(out.residual) + ")");
}

}  // namespace tdci
