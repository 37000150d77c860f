#include "tdci/model1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tdci {

namespace {

constexpr double kPi = std::numbers::pi;

void require_label(unsigned n) {
  if (n < 1) throw std::invalid_argument("orbital labels start at 1");
}

// Dense table of delta_element over 1..d in each index.
class InteractionTable {
 public:
  explicit InteractionTable(unsigned d) : d_(d), values_(std::size_t{d} * d * d * d) {
    for (unsigned a = 1; a <= d; ++a)
      for (unsigned b = 1; b <= d; ++b)
        for (unsigned c = 1; c <= d; ++c)
          for (unsigned e = 1; e <= d; ++e) values_[offset(a, b, c, e)] = delta_element(a, b, c, e);
  }

  double operator()(unsigned a, unsigned b, unsigned c, unsigned e) const {
    return values_[offset(a, b, c, e)];
  }

 private:
  std::size_t offset(unsigned a, unsigned b, unsigned c, unsigned e) const {
    return ((std::size_t{a - 1} * d_ + (b - 1)) * d_ + (c - 1)) * d_ + (e - 1);
  }

  unsigned d_;
  std::vector<double> values_;
};

}  // namespace

double kinetic_energy(unsigned n) {
  require_label(n);
  const double k = static_cast<double>(n) * kPi;
  return 0.5 * k * k;
}

double position_element(unsigned m, unsigned n) {
  require_label(m);
  require_label(n);
  if (m == n) return 0.5;
  if ((m + n) % 2 == 0) return 0.0;
  const double dm = m, dn = n;
  const double diff = dm * dm - dn * dn;
  return -8.0 * dm * dn / (kPi * kPi * diff * diff);
}

double delta_element(unsigned a, unsigned b, unsigned c, unsigned d) {
  for (unsigned n : {a, b, c, d}) require_label(n);
  // 4 sin(a)sin(b)sin(c)sin(d) = [cos(a-b) - cos(a+b)][cos(c-d) - cos(c+d)];
  // each product of cosines splits into two, and only zero frequencies
  // survive integration over [0, 1].
  const long ia = a, ib = b, ic = c, id = d;
  auto zero = [](long k) { return k == 0 ? 1 : 0; };
  const int count = zero(ia - ib - ic + id) + zero(ia - ib + ic - id)   // cos(a-b)cos(c-d)
                    - zero(ia - ib - ic - id) - zero(ia - ib + ic + id)  // cos(a-b)cos(c+d)
                    - zero(ia + ib - ic + id) - zero(ia + ib + ic - id)  // cos(a+b)cos(c-d)
                    + zero(ia + ib - ic - id) + zero(ia + ib + ic + id); // cos(a+b)cos(c+d)
  return 0.5 * count;
}

WellModel::WellModel(unsigned particles_, unsigned orbitals_, double g_)
    : particles(particles_), orbitals(orbitals_), g(g_) {
  if (particles == 0 || orbitals == 0) {
    throw std::invalid_argument("particle and orbital counts must be positive");
  }
  if (!(g >= 0.0)) throw std::invalid_argument("interaction strength must be non-negative");
}

DriveCase parse_drive_case(std::string_view name) {
  if (name == "a") return DriveCase::a;
  if (name == "b") return DriveCase::b;
  if (name == "c") return DriveCase::c;
  if (name == "d") return DriveCase::d;
  throw std::invalid_argument("unknown drive case '" + std::string(name) + "'");
}

char to_char(DriveCase c) {
  switch (c) {
    case DriveCase::a: return 'a';
    case DriveCase::b: return 'b';
    case DriveCase::c: return 'c';
    case DriveCase::d: return 'd';
  }
  return '?';
}

DriveFunction::DriveFunction(Kind kind, double value, std::function<double(double)> f)
    : kind_(kind), value_(value), custom_(std::move(f)) {}

DriveFunction DriveFunction::for_case(DriveCase c) {
  switch (c) {
    case DriveCase::a: return DriveFunction(Kind::case_a, 0.0, {});
    case DriveCase::b: return DriveFunction(Kind::case_b, 100.0, {});
    case DriveCase::c: return DriveFunction(Kind::case_c, 10.0, {});
    case DriveCase::d: return DriveFunction(Kind::case_d, 100.0, {});
  }
  throw std::invalid_argument("unknown drive case");
}

DriveFunction DriveFunction::constant(double value) {
  return DriveFunction(Kind::constant, value, {});
}

DriveFunction DriveFunction::custom(std::function<double(double)> f) {
  if (!f) throw std::invalid_argument("custom drive needs a callable");
  return DriveFunction(Kind::custom, 0.0, std::move(f));
}

double DriveFunction::operator()(double t) const {
  // The driven cases restart their profile at t = 5.
  const double local = (t < 5.0) ? t : t - 5.0;
  switch (kind_) {
    case Kind::case_a:
      return 0.0;
    case Kind::constant:
      return value_;
    case Kind::case_b:
      return value_ * (1.0 - 0.2 * local);
    case Kind::case_c:
    case Kind::case_d:
      return value_ * std::cos(2.0 * kPi * local * local);
    case Kind::custom:
      return custom_(t);
  }
  return 0.0;
}

double preparation_tilt(DriveCase c) { return c == DriveCase::c ? 10.0 : 100.0; }

ModelOperators assemble_operators(const WellModel& model, const FockBasis& basis) {
  if (basis.particles() != model.particles || basis.orbitals() != model.orbitals) {
    throw std::invalid_argument("basis does not match the model's particle/orbital counts");
  }
  const unsigned d = model.orbitals;
  const std::uint64_t dim = basis.size();
  using Entry = SparseOperator::Entry;

  std::vector<double> kinetic(d), position(std::size_t{d} * d);
  for (unsigned n = 1; n <= d; ++n) {
    kinetic[n - 1] = kinetic_energy(n);
    for (unsigned m = 1; m <= d; ++m) position[(m - 1) * d + (n - 1)] = position_element(m, n);
  }
  const bool interacting = model.g != 0.0 && model.particles >= 2;
  const InteractionTable table(interacting ? d : 1);

  std::vector<std::vector<Entry>> a_rows(dim), b_rows(dim);
  std::vector<FockBasis::Occupation> work(d);

  for (std::uint64_t col = 0; col < dim; ++col) {
    const auto src = basis.state(col);
    auto& a_row = a_rows[col];
    auto& b_row = b_rows[col];
    const auto self = static_cast<SparseOperator::Column>(col);

    double diag = 0.0;
    for (unsigned n = 0; n < d; ++n) diag += src[n] * kinetic[n];
    a_row.push_back({self, diag});

    // One-body position operator: a+_m a_n.
    for (unsigned n = 0; n < d; ++n) {
      if (src[n] == 0) continue;
      b_row.push_back({self, src[n] * position[n * d + n]});
      std::copy(src.begin(), src.end(), work.begin());
      --work[n];
      for (unsigned m = 0; m < d; ++m) {
        if (m == n) continue;
        const double x = position[m * d + n];
        if (x == 0.0) continue;
        const double amp = std::sqrt(static_cast<double>(src[n]) * (work[m] + 1));
        ++work[m];
        b_row.push_back({static_cast<SparseOperator::Column>(basis.rank(work)), amp * x});
        --work[m];
      }
    }

    if (!interacting) continue;
    // Two-body contact term (g/2) sum V_pqrs a+_p a+_q a_s a_r, grouped over
    // unordered pairs {r, s} and {p, q}; each group stands for
    // (p != q ? 2 : 1) * (r != s ? 2 : 1) ordered index tuples.
    for (unsigned r = 0; r < d; ++r) {
      if (src[r] == 0) continue;
      for (unsigned s = r; s < d; ++s) {
        const unsigned ns = src[s] - (r == s ? 1u : 0u);
        if (src[s] == 0 || ns == 0) continue;
        std::copy(src.begin(), src.end(), work.begin());
        const double ann2 = static_cast<double>(src[r]) * ns;
        --work[r];
        --work[s];
        for (unsigned p = 0; p < d; ++p) {
          for (unsigned q = p; q < d; ++q) {
            const double v = table(p + 1, q + 1, r + 1, s + 1);
            if (v == 0.0) continue;
            const double cre2 = static_cast<double>(work[q] + 1) * (work[p] + 1 + (p == q ? 1 : 0));
            const double mult = (p != q ? 2.0 : 1.0) * (r != s ? 2.0 : 1.0);
            ++work[p];
            ++work[q];
            const auto row = basis.rank(work);
            --work[p];
            --work[q];
            a_row.push_back({static_cast<SparseOperator::Column>(row),
                             0.5 * model.g * mult * v * std::sqrt(ann2 * cre2)});
          }
        }
      }
    }
  }

  return {SparseOperator::from_rows(std::move(a_rows)),
          SparseOperator::from_rows(std::move(b_rows))};
}

}  // namespace tdci
