#include "tdci/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tdci {

namespace {

constexpr double kBreakdownRelative = 1e-12;
constexpr int kMaxSweeps = 50;

}  // namespace

LanczosProcess::LanczosProcess(OperatorApply op, std::span<const Complex> start)
    : op_(std::move(op)), pending_(start.begin(), start.end()), work_(start.size()) {
  const double n = norm(start);
  if (!(n > 0.0)) throw std::invalid_argument("Lanczos start vector is zero");
  space_.start_norm = n;
  scale(1.0 / n, pending_);
}

bool LanczosProcess::extend() {
  if (space_.breakdown) return false;
  const std::size_t j = space_.dimension();
  space_.vectors.push_back(std::move(pending_));
  const StateVector& k = space_.vectors.back();

  op_(k, work_);
  if (j > 0) axpy(-space_.beta[j - 1], space_.vectors[j - 1], work_);
  const double alpha = inner(k, work_).real();
  axpy(-alpha, k, work_);
  const double beta = norm(work_);
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::runtime_error("non-finite value in Lanczos recursion");
  }
  space_.alpha.push_back(alpha);
  space_.beta.push_back(beta);
  alpha_scale_ = std::max(alpha_scale_, std::abs(alpha));

  if (beta < kBreakdownRelative * alpha_scale_) {
    space_.breakdown = true;
    pending_.clear();
  } else {
    pending_ = work_;
    scale(1.0 / beta, pending_);
  }
  return true;
}

KrylovSpace build_krylov(const OperatorApply& op, std::span<const Complex> start,
                         std::size_t dimension) {
  if (std::abs(norm(start) - 1.0) > 1e-6) {
    throw std::invalid_argument("Krylov start vector must be normalised");
  }
  LanczosProcess lanczos(op, start);
  while (lanczos.space().dimension() < dimension && lanczos.extend()) {
  }
  return std::move(lanczos.space());
}

TridiagonalEigen eigen_tridiagonal(std::span<const double> alpha,
                                   std::span<const double> off_diagonal) {
  const std::size_t n = alpha.size();
  if (n == 0) throw std::invalid_argument("empty tridiagonal matrix");
  if (off_diagonal.size() + 1 != n) {
    throw std::invalid_argument("off-diagonal must have one entry fewer than the diagonal");
  }
  std::vector<double> d(alpha.begin(), alpha.end());
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  auto Z = [&](std::size_t row, std::size_t col) -> double& { return z[col * n + row]; };

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == kMaxSweeps) {
        throw std::runtime_error("tridiagonal eigensolver did not converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          f = Z(k, i + 1);
          Z(k, i + 1) = s * Z(k, i) + c * f;
          Z(k, i) = c * Z(k, i) - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  TridiagonalEigen out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = d[src];
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(Z(i, src)) > 1e-12) {
        sign = Z(i, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors[k * n + i] = sign * Z(i, src);
  }
  return out;
}

TridiagonalEigen eigen_tridiagonal(const KrylovSpace& space) {
  return eigen_tridiagonal(space.alpha, space.off_diagonal());
}

std::vector<Complex> krylov_coefficients(const TridiagonalEigen& eig, double dt) {
  const std::size_t n = eig.size();
  std::vector<Complex> phase(n);
  for (std::size_t k = 0; k < n; ++k) {
    phase[k] = eig.q(0, k) * std::polar(1.0, -dt * eig.values[k]);
  }
  std::vector<Complex> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += eig.q(j, k) * phase[k];
    c[j] = sum;
  }
  return c;
}

KrylovPropagation propagate_in_krylov(const KrylovSpace& space, const TridiagonalEigen& eig,
                                      double dt) {
  if (eig.size() != space.dimension() || space.dimension() == 0) {
    throw std::invalid_argument("eigen-decomposition does not match the Krylov space");
  }
  KrylovPropagation out;
  out.coefficients = krylov_coefficients(eig, dt);
  out.state.assign(space.vectors.front().size(), Complex{});
  for (std::size_t j = 0; j < space.dimension(); ++j) {
    axpy(space.start_norm * out.coefficients[j], space.vectors[j], out.state);
  }
  return out;
}

double last_coefficient(const KrylovSpace& space, const TridiagonalEigen& eig, double dt) {
  if (space.breakdown) return 0.0;
  const std::size_t n = eig.size();
  Complex sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += eig.q(n - 1, k) * eig.q(0, k) * std::polar(1.0, -dt * eig.values[k]);
  }
  return std::abs(sum);
}

}  // namespace tdci
