#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library's matrix-element or basis code.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "tdci/sparse.hpp"
#include "tdci/state.hpp"

namespace oracle {

using tdci::Complex;
using tdci::StateVector;

inline Eigen::MatrixXd dense(const tdci::SparseOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const auto off = op.row_offsets();
  const auto col = op.columns();
  const auto val = op.values();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) m(i, col[k]) = val[k];
  }
  return m;
}

inline Eigen::VectorXcd to_eigen(std::span<const Complex> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline StateVector from_eigen(const Eigen::VectorXcd& v) {
  return StateVector(v.data(), v.data() + v.size());
}

inline tdci::SparseOperator sparse_from_dense(const Eigen::MatrixXd& m) {
  std::vector<tdci::SparseOperator::Triplet> t;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) t.push_back({std::uint64_t(i), std::uint64_t(j), m(i, j)});
  return tdci::SparseOperator::from_triplets(static_cast<std::uint64_t>(m.rows()), t);
}

/// Random real symmetric matrix with roughly `fill` of the entries nonzero.
inline Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double fill = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(fill);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (int j = i + 1; j < n; ++j) {
      if (keep(rng)) m(i, j) = m(j, i) = u(rng);
    }
  }
  return m;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex{g(rng), g(rng)};
  return 0.5 * (m + m.adjoint());
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng, bool normalise = true) {
  std::normal_distribution<double> g;
  StateVector v(n);
  for (auto& z : v) z = Complex{g(rng), g(rng)};
  if (normalise) tdci::scale(1.0 / tdci::norm(v), v);
  return v;
}

/// exp(-i t H) v for Hermitian H by full eigen-decomposition.
inline Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& h, double t, const Eigen::VectorXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * v);
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;

  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = 0.5 * (1.0 - z);
      w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  double integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

inline double orbital(unsigned n, double x) {
  return std::sqrt(2.0) * std::sin(n * std::numbers::pi * x);
}

/// Adaptive Simpson on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-14, int depth = 40) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// All occupation vectors of n bosons over d orbitals, by recursion.
inline void all_occupations(unsigned n, unsigned d, std::vector<unsigned>& prefix,
                            std::vector<std::vector<unsigned>>& out) {
  if (prefix.size() + 1 == d) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned k = 0; k <= n; ++k) {
    prefix.push_back(k);
    all_occupations(n - k, d, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<unsigned>> all_occupations(unsigned n, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> prefix;
  all_occupations(n, d, prefix, out);
  return out;
}

/// A ladder operator acting on an occupation vector with its amplitude.
struct FockKet {
  std::vector<unsigned> occ;
  double amp = 1.0;
};

/// a_k (1-based k); empty amplitude 0 when the mode is empty.
inline FockKet lower(FockKet s, unsigned k) {
  const unsigned n = s.occ[k - 1];
  s.amp *= std::sqrt(static_cast<double>(n));
  if (n > 0) --s.occ[k - 1];
  return s;
}

inline FockKet raise(FockKet s, unsigned k) {
  ++s.occ[k - 1];
  s.amp *= std::sqrt(static_cast<double>(s.occ[k - 1]));
  return s;
}

/// First-quantised N-particle Hamiltonian in the d^N product basis,
/// sum_j (T_j + f x_j) + g sum_{j<k} delta(x_j - x_k), with every one- and
/// two-body integral done by Gauss-Legendre quadrature of the orbitals.
struct ProductSpace {
  unsigned n, d;
  Eigen::MatrixXd kinetic_plus_contact;
  Eigen::MatrixXd position;

  ProductSpace(unsigned particles, unsigned orbitals, double g) : n(particles), d(orbitals) {
    const GaussLegendre gl(80);
    Eigen::MatrixXd x1(d, d);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j)
        x1(i, j) = gl.integrate([&](double x) { return orbital(i + 1, x) * x * orbital(j + 1, x); });
    // Kinetic energy -1/2 d^2/dx^2 by quadrature of the derivative product.
    Eigen::MatrixXd t1(d, d);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j)
        t1(i, j) = 0.5 * gl.integrate([&](double x) {
          const double pi = std::numbers::pi;
          return 2.0 * (i + 1) * pi * std::cos((i + 1) * pi * x) * (j + 1) * pi *
                 std::cos((j + 1) * pi * x);
        });
    std::vector<double> v(std::size_t(d) * d * d * d);
    auto vidx = [&](unsigned a, unsigned b, unsigned c, unsigned e) {
      return ((std::size_t(a) * d + b) * d + c) * d + e;
    };
    for (unsigned a = 0; a < d; ++a)
      for (unsigned b = 0; b < d; ++b)
        for (unsigned c = 0; c < d; ++c)
          for (unsigned e = 0; e < d; ++e)
            v[vidx(a, b, c, e)] = gl.integrate([&](double x) {
              return orbital(a + 1, x) * orbital(b + 1, x) * orbital(c + 1, x) * orbital(e + 1, x);
            });

    std::size_t dim = 1;
    for (unsigned k = 0; k < n; ++k) dim *= d;
    kinetic_plus_contact = Eigen::MatrixXd::Zero(dim, dim);
    position = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<unsigned> bra(n), ket(n);
    for (std::size_t r = 0; r < dim; ++r) {
      decode(r, bra);
      for (std::size_t c = 0; c < dim; ++c) {
        decode(c, ket);
        double h = 0.0, xsum = 0.0;
        for (unsigned j = 0; j < n; ++j) {
          if (!others_equal(bra, ket, j, j)) continue;
          h += t1(bra[j], ket[j]);
          xsum += x1(bra[j], ket[j]);
        }
        for (unsigned j = 0; j < n; ++j)
          for (unsigned k = j + 1; k < n; ++k)
            if (others_equal(bra, ket, j, k)) h += g * v[vidx(bra[j], bra[k], ket[j], ket[k])];
        kinetic_plus_contact(r, c) = h;
        position(r, c) = xsum;
      }
    }
  }

  void decode(std::size_t idx, std::vector<unsigned>& labels) const {
    for (unsigned k = n; k-- > 0;) {
      labels[k] = static_cast<unsigned>(idx % d);
      idx /= d;
    }
  }

  static bool others_equal(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                           unsigned skip1, unsigned skip2) {
    for (unsigned m = 0; m < a.size(); ++m)
      if (m != skip1 && m != skip2 && a[m] != b[m]) return false;
    return true;
  }

  /// Normalised symmetrised product vector of an occupation pattern.
  Eigen::VectorXd symmetric_state(const std::vector<unsigned>& occ) const {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(kinetic_plus_contact.rows());
    std::vector<unsigned> labels(n);
    for (Eigen::Index idx = 0; idx < s.size(); ++idx) {
      decode(static_cast<std::size_t>(idx), labels);
      std::vector<unsigned> count(d, 0);
      for (unsigned l : labels) ++count[l];
      if (count == occ) s(idx) = 1.0;
    }
    return s.normalized();
  }

  /// Projection onto the given occupation basis: S^T H S.
  Eigen::MatrixXd project(const Eigen::MatrixXd& h,
                          const std::vector<std::vector<unsigned>>& basis) const {
    Eigen::MatrixXd s(h.rows(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) s.col(Eigen::Index(k)) = symmetric_state(basis[k]);
    return s.transpose() * h * s;
  }
};

}  // namespace oracle
