#include "tdci/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tdci {

namespace {

void require_dimension(const SparseOperator& op, std::size_t n) {
  if (op.dimension() != n) {
    throw std::invalid_argument("operator dimension " + std::to_string(op.dimension()) +
                                " does not match vector length " + std::to_string(n));
  }
}

}  // namespace

SparseOperator SparseOperator::from_rows(std::vector<std::vector<Entry>> rows,
                                         double symmetry_tol) {
  if (rows.size() > std::numeric_limits<Column>::max()) {
    throw std::length_error("operator dimension exceeds 32-bit column index");
  }
  SparseOperator op;
  op.dimension_ = rows.size();
  op.offsets_.assign(1, 0);
  op.offsets_.reserve(rows.size() + 1);

  double max_abs = 0.0;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(),
              [](const Entry& x, const Entry& y) { return x.col < y.col; });
    std::size_t i = 0;
    while (i < row.size()) {
      const Column col = row[i].col;
      if (col >= op.dimension_) throw std::out_of_range("column index out of range");
      double sum = 0.0;
      for (; i < row.size() && row[i].col == col; ++i) sum += row[i].value;
      if (sum != 0.0) {
        op.columns_.push_back(col);
        op.values_.push_back(sum);
        max_abs = std::max(max_abs, std::abs(sum));
      }
    }
    op.offsets_.push_back(op.columns_.size());
    row.clear();
    row.shrink_to_fit();
  }

  // Mirror the upper triangle onto the lower one after checking agreement.
  std::size_t lower = 0, upper = 0;
  for (std::uint64_t i = 0; i < op.dimension_; ++i) {
    for (std::size_t k = op.offsets_[i]; k < op.offsets_[i + 1]; ++k) {
      const std::uint64_t j = op.columns_[k];
      if (j > i) {
        ++upper;
        continue;
      }
      if (j == i) continue;
      ++lower;
      const auto begin = op.columns_.begin() + static_cast<std::ptrdiff_t>(op.offsets_[j]);
      const auto end = op.columns_.begin() + static_cast<std::ptrdiff_t>(op.offsets_[j + 1]);
      const auto it = std::lower_bound(begin, end, static_cast<Column>(i));
      if (it == end || *it != i) {
        throw std::invalid_argument("operator is not structurally symmetric");
      }
      const double mirror = op.values_[static_cast<std::size_t>(it - op.columns_.begin())];
      if (std::abs(mirror - op.values_[k]) > symmetry_tol * max_abs) {
        throw std::invalid_argument("operator is not numerically symmetric");
      }
      op.values_[k] = mirror;
    }
  }
  if (lower != upper) throw std::invalid_argument("operator is not structurally symmetric");
  return op;
}

SparseOperator SparseOperator::from_triplets(std::uint64_t dimension,
                                             const std::vector<Triplet>& triplets,
                                             double symmetry_tol) {
  if (dimension > std::numeric_limits<Column>::max()) {
    throw std::length_error("operator dimension exceeds 32-bit column index");
  }
  std::vector<std::vector<Entry>> rows(dimension);
  for (const auto& t : triplets) {
    if (t.row >= dimension || t.col >= dimension) {
      throw std::out_of_range("triplet index out of range");
    }
    rows[t.row].push_back({static_cast<Column>(t.col), t.value});
  }
  return from_rows(std::move(rows), symmetry_tol);
}

double SparseOperator::element(std::uint64_t i, std::uint64_t j) const {
  if (i >= dimension_ || j >= dimension_) throw std::out_of_range("element index");
  const auto begin = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  const auto end = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  const auto it = std::lower_bound(begin, end, static_cast<Column>(j));
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

bool SparseOperator::is_symmetric() const {
  for (std::uint64_t i = 0; i < dimension_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (k > offsets_[i] && columns_[k] <= columns_[k - 1]) return false;
      if (element(columns_[k], i) != values_[k]) return false;
    }
  }
  return true;
}

void SparseOperator::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  require_dimension(*this, x.size());
  require_dimension(*this, y.size());
  for (std::uint64_t i = 0; i < dimension_; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const double v = values_[k];
      const Complex& xj = x[columns_[k]];
      re += v * xj.real();
      im += v * xj.imag();
    }
    y[i] = {re, im};
  }
}

void SparseOperator::multiply_add(double alpha, std::span<const Complex> x,
                                  std::span<Complex> y) const {
  require_dimension(*this, x.size());
  require_dimension(*this, y.size());
  for (std::uint64_t i = 0; i < dimension_; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      const double v = values_[k];
      const Complex& xj = x[columns_[k]];
      re += v * xj.real();
      im += v * xj.imag();
    }
    y[i] += Complex{alpha * re, alpha * im};
  }
}

StateVector apply(const SparseOperator& op, std::span<const Complex> v,
                  MatvecCounter& counter) {
  StateVector out(v.size());
  op.multiply(v, out);
  counter.add();
  return out;
}

StateVector apply_hamiltonian(const SparseOperator& a, const SparseOperator& b,
                              double f, std::span<const Complex> v,
                              MatvecCounter& counter) {
  StateVector out(v.size());
  a.multiply(v, out);
  if (f != 0.0) b.multiply_add(f, v, out);
  counter.add();
  return out;
}

OperatorProducts apply_pair(const SparseOperator& a, const SparseOperator& b,
                            std::span<const Complex> v, MatvecCounter& counter) {
  OperatorProducts p{StateVector(v.size()), StateVector(v.size())};
  a.multiply(v, p.av);
  b.multiply(v, p.bv);
  counter.add();
  return p;
}

StateVector apply_commutator(const SparseOperator& a, const SparseOperator& b,
                             const OperatorProducts& products,
                             MatvecCounter& counter) {
  StateVector out(products.av.size());
  a.multiply(products.bv, out);
  b.multiply_add(-1.0, products.av, out);
  counter.add();
  return out;
}

StateVector apply_commutator(const SparseOperator& a, const SparseOperator& b,
                             std::span<const Complex> v, MatvecCounter& counter) {
  const auto products = apply_pair(a, b, v, counter);
  return apply_commutator(a, b, products, counter);
}

void write_triplets(std::ostream& out, const SparseOperator& op) {
  out << op.dimension() << ' ' << op.nonzeros() << '\n';
  out << std::setprecision(17);
  const auto offsets = op.row_offsets();
  const auto cols = op.columns();
  const auto vals = op.values();
  for (std::uint64_t i = 0; i < op.dimension(); ++i) {
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      out << i << ' ' << cols[k] << ' ' << vals[k] << '\n';
    }
  }
}

SparseOperator read_triplets(std::istream& in) {
  std::uint64_t dimension = 0;
  std::size_t nnz = 0;
  if (!(in >> dimension >> nnz)) throw std::runtime_error("malformed triplet header");
  std::vector<SparseOperator::Triplet> triplets(nnz);
  for (auto& t : triplets) {
    if (!(in >> t.row >> t.col >> t.value)) throw std::runtime_error("truncated triplet list");
  }
  return SparseOperator::from_triplets(dimension, triplets);
}

}  // namespace tdci
