#pragma once

#include <functional>
#include <string_view>

#include "tdci/fock.hpp"
#include "tdci/sparse.hpp"

namespace tdci {

// Single-particle orbitals are phi_n(x) = sqrt(2) sin(n pi x) on 0 < x < 1,
// with hbar = m = L = 1. Orbital labels are 1-based.

/// n^2 pi^2 / 2
double kinetic_energy(unsigned n);

/// <phi_m| x |phi_n>
double position_element(unsigned m, unsigned n);

/// Integral of phi_a phi_b phi_c phi_d over the well.
double delta_element(unsigned a, unsigned b, unsigned c, unsigned d);

/// N bosons in the infinite well with contact repulsion g.
struct WellModel {
  WellModel(unsigned particles, unsigned orbitals, double g);

  unsigned particles;
  unsigned orbitals;
  double g;
};

enum class DriveCase { a, b, c, d };

DriveCase parse_drive_case(std::string_view name);
char to_char(DriveCase c);

/// Scalar tilt f(t) multiplying the position operator.
class DriveFunction {
 public:
  enum class Kind { case_a, case_b, case_c, case_d, constant, custom };

  static DriveFunction for_case(DriveCase c);
  static DriveFunction constant(double value);
  static DriveFunction custom(std::function<double(double)> f);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::case_a || kind_ == Kind::constant; }

 private:
  DriveFunction(Kind kind, double value, std::function<double(double)> f);

  Kind kind_;
  double value_ = 0.0;
  std::function<double(double)> custom_;
};

/// Tilt at which the initial ground state is prepared (10 for case c, 100
/// otherwise).
double preparation_tilt(DriveCase c);

/// H(t) = A + f(t) B in the Fock basis: A holds kinetic plus contact
/// interaction, B the total position sum_j x_j.
struct ModelOperators {
  SparseOperator a;
  SparseOperator b;
};

ModelOperators assemble_operators(const WellModel& model, const FockBasis& basis);

}  // namespace tdci
