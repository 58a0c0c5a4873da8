#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eqmorse/complex.hpp"

namespace eqmorse {

/// A named permutation of basis labels, degree by degree. Labels that are
/// not mentioned are fixed.
struct Permutation {
  std::string name;
  std::map<int, std::map<std::string, std::string>> maps;

  std::string apply(int degree, const std::string& label) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// A finite group acting on the basis of a chain complex by permutations.
/// The group is stored as the explicit closure of its generators; element 0
/// is the identity.
class GroupAction {
 public:
  static constexpr std::size_t default_closure_cap = 10000;

  static GroupAction trivial(const ChainComplex& complex);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::string& generator_name(std::size_t g) const { return names_[g]; }

  Cell apply_generator(std::size_t g, const Cell& cell) const;
  Cell apply(std::size_t element, const Cell& cell) const;
  Chain apply_generator(std::size_t g, const Chain& chain) const;
  Chain apply(std::size_t element, const Chain& chain) const;

  /// The generators as label maps, fixed points omitted.
  std::vector<Permutation> generator_permutations() const;

  /// The same generators acting on a complex whose basis is a subset of the
  /// current one (labels identify elements). Throws contract_violation when
  /// the subset is not G-stable.
  GroupAction restricted_to(const ChainComplex& complex) const;

  /// Every cell known to the action, sorted by (degree, label).
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  friend GroupAction close_generators(const ChainComplex&, const std::vector<Permutation>&,
                                      std::size_t);

 private:
  using IndexPerm = std::vector<std::size_t>;

  std::size_t index(const Cell& cell) const;

  std::vector<Cell> cells_;
  std::map<Cell, std::size_t> index_;
  std::vector<std::string> names_;
  std::vector<IndexPerm> generators_;
  std::vector<IndexPerm> elements_;
};

/// Closes the generators under composition. Throws generator_not_bijective
/// for a generator that is not a degree-preserving bijection of the basis,
/// and closure_overflow when the group exceeds cap elements.
GroupAction close_generators(const ChainComplex& complex, const std::vector<Permutation>& generators,
                             std::size_t cap = GroupAction::default_closure_cap);

struct GMapViolation {
  std::string generator;
  Cell cell;
};

/// Checks ∂(g·b) = g·∂b for every generator g and basis element b, then
/// spot-checks up to five further group elements.
std::vector<GMapViolation> verify_g_map(const ChainComplex& complex, const GroupAction& group);

struct Orbit {
  Cell representative;
  std::vector<Cell> members;  // sorted, representative first

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

Orbit orbit(const GroupAction& group, const Cell& cell);

/// Orbit partition of the whole basis, ordered by representative.
std::vector<Orbit> orbits(const GroupAction& group, const ChainComplex& complex);

}  // namespace eqmorse
