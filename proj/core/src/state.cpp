#include "tdci/state.hpp"

#include <cmath>
#include <stdexcept>

namespace tdci {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("vector dimension mismatch");
}

}  // namespace

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ur = u[i].real(), ui = u[i].imag();
    const double vr = v[i].real(), vi = v[i].imag();
    re += ur * vr + ui * vi;
    im += ur * vi - ui * vr;
  }
  return {re, im};
}

double norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& z : v) sum += z.real() * z.real() + z.imag() * z.imag();
  return std::sqrt(sum);
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  require_same_size(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(Complex a, std::span<Complex> v) {
  for (auto& z : v) z *= a;
}

double distance(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::norm(u[i] - v[i]);
  return std::sqrt(sum);
}

}  // namespace tdci
