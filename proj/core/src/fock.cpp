#include "tdci/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tdci {

namespace {

// Largest basis this library will materialise; sparse column indices are
// 32-bit.
constexpr std::uint64_t kMaxBasisSize = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::uint64_t bosonic_dimension(unsigned particles, unsigned orbitals) {
  if (particles == 0 || orbitals == 0) {
    throw std::invalid_argument("particle and orbital counts must be positive");
  }
  // C(n, k) with k = min(particles, orbitals - 1), built incrementally so each
  // partial product is itself a binomial coefficient.
  const std::uint64_t n = std::uint64_t{orbitals} + particles - 1;
  const std::uint64_t k = std::min<std::uint64_t>(particles, orbitals - 1);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is C(n - k + i, i), an exact integer; cancel
    // the common factor first so only a true overflow can trip the check.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    const std::uint64_t reduced = result / g;
    if (factor != 0 && reduced > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("bosonic dimension overflows 64-bit index");
    }
    result = reduced * factor;
  }
  return result;
}

FockBasis::FockBasis(unsigned particles, unsigned orbitals)
    : particles_(particles), orbitals_(orbitals) {}

FockBasis FockBasis::enumerate(unsigned particles, unsigned orbitals) {
  if (particles == 0 || orbitals == 0) {
    throw std::invalid_argument("particle and orbital counts must be positive");
  }
  if (particles > std::numeric_limits<Occupation>::max()) {
    throw std::invalid_argument("at most 255 particles are supported");
  }
  const std::uint64_t dim = bosonic_dimension(particles, orbitals);
  if (dim > kMaxBasisSize ||
      dim > std::numeric_limits<std::size_t>::max() / orbitals) {
    throw std::overflow_error("basis of dimension " + std::to_string(dim) +
                              " exceeds the index type");
  }

  FockBasis basis(particles, orbitals);
  basis.size_ = dim;

  basis.ways_.assign(static_cast<std::size_t>(orbitals + 1) * (particles + 1), 0);
  for (unsigned m = 0; m <= orbitals; ++m) {
    for (unsigned p = 0; p <= particles; ++p) {
      std::uint64_t& w = basis.ways_[static_cast<std::size_t>(m) * (particles + 1) + p];
      if (m == 0) {
        w = (p == 0) ? 1 : 0;
      } else {
        w = (p == 0) ? 1 : bosonic_dimension(p, m);
      }
    }
  }

  basis.occupations_.resize(static_cast<std::size_t>(dim) * orbitals);
  std::vector<Occupation> current(orbitals, 0);
  current[0] = static_cast<Occupation>(particles);
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::copy(current.begin(), current.end(),
              basis.occupations_.begin() + static_cast<std::ptrdiff_t>(i * orbitals));
    if (i + 1 == dim) break;
    // Successor in descending-lexicographic order: find the rightmost
    // non-last orbital with a particle, move one particle right and gather
    // everything after it into the next orbital.
    int k = static_cast<int>(orbitals) - 2;
    while (k >= 0 && current[static_cast<std::size_t>(k)] == 0) --k;
    const auto pos = static_cast<std::size_t>(k);
    unsigned tail = current[orbitals - 1];
    current[orbitals - 1] = 0;
    --current[pos];
    current[pos + 1] = static_cast<Occupation>(current[pos + 1] + 1 + tail);
  }
  return basis;
}

std::uint64_t FockBasis::rank(std::span<const Occupation> occ) const {
  std::uint64_t index = 0;
  unsigned remaining = particles_;
  for (unsigned k = 0; k + 1 < orbitals_ && remaining > 0; ++k) {
    const unsigned n = occ[k];
    // States sharing the prefix but holding more particles in orbital k come
    // first; those place remaining - v particles in the orbitals after k.
    const unsigned rest = orbitals_ - k - 1;
    for (unsigned v = n + 1; v <= remaining; ++v) index += ways(rest, remaining - v);
    remaining -= n;
  }
  return index;
}

std::optional<std::uint64_t> FockBasis::index_of(std::span<const Occupation> occ) const {
  if (occ.size() != orbitals_) return std::nullopt;
  unsigned total = 0;
  for (auto n : occ) total += n;
  if (total != particles_) return std::nullopt;
  return rank(occ);
}

std::vector<PairTransition> apply_annihilation_pair_map(const FockBasis& basis,
                                                        unsigned p, unsigned q,
                                                        unsigned r, unsigned s) {
  const unsigned d = basis.orbitals();
  for (unsigned label : {p, q, r, s}) {
    if (label < 1 || label > d) throw std::out_of_range("orbital label outside [1, d1]");
  }
  const unsigned ip = p - 1, iq = q - 1, ir = r - 1, is = s - 1;

  std::vector<PairTransition> out;
  std::vector<FockBasis::Occupation> work(d);
  for (std::uint64_t col = 0; col < basis.size(); ++col) {
    const auto src = basis.state(col);
    std::copy(src.begin(), src.end(), work.begin());
    // a_r then a_s then a+_q then a+_p; the squared amplitude is an exact
    // integer product.
    std::uint64_t amp2 = work[ir];
    if (amp2 == 0) continue;
    --work[ir];
    if (work[is] == 0) continue;
    amp2 *= work[is];
    --work[is];
    amp2 *= static_cast<std::uint64_t>(work[iq]) + 1;
    ++work[iq];
    amp2 *= static_cast<std::uint64_t>(work[ip]) + 1;
    ++work[ip];
    out.push_back({basis.rank(work), col, std::sqrt(static_cast<double>(amp2))});
  }
  return out;
}

}  // namespace tdci
