#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tdci {

using Complex = std::complex<double>;

/// Amplitudes b_nu(t) of a many-body state in a fixed basis.
using StateVector = std::vector<Complex>;

/// conj(u) . v
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

double norm(std::span<const Complex> v);

/// y += a * x
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);

void scale(Complex a, std::span<Complex> v);

/// Euclidean norm of u - v.
double distance(std::span<const Complex> u, std::span<const Complex> v);

}  // namespace tdci
