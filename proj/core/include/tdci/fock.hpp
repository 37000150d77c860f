#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tdci {

/// Number of bosonic occupation states of `particles` bosons in `orbitals`
/// orbitals, C(orbitals + particles - 1, particles). Throws
/// std::overflow_error if the count does not fit in 64 bits.
std::uint64_t bosonic_dimension(unsigned particles, unsigned orbitals);

/// Enumerated bosonic Fock space over a truncated orbital set.
///
/// States are stored in lexicographic order with the first orbital's
/// occupation descending, so state 0 is (N, 0, ..., 0) and the last state is
/// (0, ..., 0, N). Lookup uses combinatorial ranking, so the basis carries no
/// hash table. Immutable after construction.
class FockBasis {
 public:
  using Occupation = std::uint8_t;

  static FockBasis enumerate(unsigned particles, unsigned orbitals);

  unsigned particles() const { return particles_; }
  unsigned orbitals() const { return orbitals_; }
  std::uint64_t size() const { return size_; }

  /// Occupations of state `i`; entry n is the count in orbital n + 1.
  std::span<const Occupation> state(std::uint64_t i) const {
    return {occupations_.data() + i * orbitals_, orbitals_};
  }

  /// Ordinal of an occupation vector, or nullopt if it is not a state of this
  /// basis (wrong length or wrong particle number).
  std::optional<std::uint64_t> index_of(std::span<const Occupation> occ) const;

  /// Same as index_of for vectors already known to be valid.
  std::uint64_t rank(std::span<const Occupation> occ) const;

 private:
  FockBasis(unsigned particles, unsigned orbitals);

  // ways(m, p): number of ways to put p bosons into m orbitals.
  std::uint64_t ways(unsigned m, unsigned p) const {
    return ways_[static_cast<std::size_t>(m) * (particles_ + 1) + p];
  }

  unsigned particles_ = 0;
  unsigned orbitals_ = 0;
  std::uint64_t size_ = 0;
  std::vector<Occupation> occupations_;
  std::vector<std::uint64_t> ways_;
};

/// One nonzero matrix element <row| a+_p a+_q a_s a_r |col>.
struct PairTransition {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  double weight = 0.0;
};

/// Action of a+_p a+_q a_s a_r on every basis state. Orbital labels are
/// 1-based. Returns one entry per source state that survives both
/// annihilations, ordered by source index.
std::vector<PairTransition> apply_annihilation_pair_map(const FockBasis& basis,
                                                        unsigned p, unsigned q,
                                                        unsigned r, unsigned s);

}  // namespace tdci
