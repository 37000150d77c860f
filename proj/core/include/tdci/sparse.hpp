#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tdci/state.hpp"

namespace tdci {

/// Count of Hamiltonian-equivalent matrix-vector products.
///
/// The unit is one application of H(t) = A + f(t) B. A standalone apply() of a
/// single operator also counts one.
class MatvecCounter {
 public:
  void add(std::uint64_t n = 1) { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

/// Real symmetric matrix in compressed-row form, full pattern stored.
class SparseOperator {
 public:
  using Column = std::uint32_t;

  struct Entry {
    Column col;
    double value;
  };

  struct Triplet {
    std::uint64_t row;
    std::uint64_t col;
    double value;
  };

  SparseOperator() = default;

  /// rows[i] holds the entries of row i in any order. Duplicate columns are
  /// summed and exact zeros dropped. Throws if the result is not symmetric to
  /// `symmetry_tol` (relative to the largest magnitude); within tolerance the
  /// lower triangle is overwritten by the upper one so storage is exactly
  /// symmetric.
  static SparseOperator from_rows(std::vector<std::vector<Entry>> rows,
                                  double symmetry_tol = 1e-12);

  static SparseOperator from_triplets(std::uint64_t dimension,
                                      const std::vector<Triplet>& triplets,
                                      double symmetry_tol = 1e-12);

  std::uint64_t dimension() const { return dimension_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> row_offsets() const { return offsets_; }
  std::span<const Column> columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  /// Entry (i, j), zero when absent.
  double element(std::uint64_t i, std::uint64_t j) const;

  /// Exact structural and numerical symmetry with sorted rows.
  bool is_symmetric() const;

  /// y = M x. Uncounted; callers account for cost.
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;

  /// y += alpha M x. Uncounted.
  void multiply_add(double alpha, std::span<const Complex> x, std::span<Complex> y) const;

 private:
  std::uint64_t dimension_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Column> columns_;
  std::vector<double> values_;
};

/// op . v, counts one.
StateVector apply(const SparseOperator& op, std::span<const Complex> v,
                  MatvecCounter& counter);

/// (A + f B) . v, counts one.
StateVector apply_hamiltonian(const SparseOperator& a, const SparseOperator& b,
                              double f, std::span<const Complex> v,
                              MatvecCounter& counter);

/// A v and B v, computed together for reuse by the commutator.
struct OperatorProducts {
  StateVector av;
  StateVector bv;
};

/// Computes A v and B v; counts one.
OperatorProducts apply_pair(const SparseOperator& a, const SparseOperator& b,
                            std::span<const Complex> v, MatvecCounter& counter);

/// [A, B] v = A (B v) - B (A v) from precomputed products; counts one.
StateVector apply_commutator(const SparseOperator& a, const SparseOperator& b,
                             const OperatorProducts& products,
                             MatvecCounter& counter);

/// [A, B] v from scratch; counts two.
StateVector apply_commutator(const SparseOperator& a, const SparseOperator& b,
                             std::span<const Complex> v, MatvecCounter& counter);

/// Debug text format: "dimension nnz" header then one "row col value" line
/// per stored entry, 0-based, values with 17 significant digits.
void write_triplets(std::ostream& out, const SparseOperator& op);
SparseOperator read_triplets(std::istream& in);

}  // namespace tdci
