#include "tdci/magnus.hpp"

#include <memory>

namespace tdci {

MagnusGenerator first_order_generator(const DriveFunction& f, double t, double dt) {
  MagnusGenerator g;
  g.a_weight = dt;
  g.b_weight = dt / 6.0 * (f(t) + 4.0 * f(t + 0.5 * dt) + f(t + dt));
  return g;
}

MagnusGenerator second_order_generator(const DriveFunction& f, double t, double dt) {
  MagnusGenerator g = first_order_generator(f, t, dt);
  g.commutator_weight = dt * dt / 12.0 * (f(t + dt) - f(t));
  g.second_order = true;
  return g;
}

OperatorApply make_generator_apply(const SparseOperator& a, const SparseOperator& b,
                                   const MagnusGenerator& generator, MatvecCounter& counter) {
  if (!generator.second_order) {
    return [&a, &b, generator, &counter](std::span<const Complex> x, std::span<Complex> out) {
      a.multiply(x, out);
      if (generator.a_weight != 1.0) scale(generator.a_weight, out);
      if (generator.b_weight != 0.0) b.multiply_add(generator.b_weight, x, out);
      counter.add();
    };
  }
  auto work = std::make_shared<OperatorProducts>();
  return [&a, &b, generator, &counter, work](std::span<const Complex> x, std::span<Complex> out) {
    work->av.resize(x.size());
    work->bv.resize(x.size());
    a.multiply(x, work->av);
    b.multiply(x, work->bv);
    // out = i c (A B x - B A x), then add the first-order part.
    a.multiply(work->bv, out);
    b.multiply_add(-1.0, work->av, out);
    const Complex ic{0.0, generator.commutator_weight};
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = ic * out[i] + generator.a_weight * work->av[i] +
               generator.b_weight * work->bv[i];
    }
    counter.add(2);
  };
}

}  // namespace tdci
