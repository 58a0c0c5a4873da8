#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqmorse/action.hpp"
#include "eqmorse/complex.hpp"
#include "eqmorse/poset.hpp"

namespace eqmorse {

/// A set of (lower, upper) pairs of basis elements in adjacent degrees.
/// Nothing beyond the degree shape is enforced here; validate() decides
/// whether the pairs form an acyclic, equivariant matching.
class Matching {
 public:
  using Pair = std::pair<Cell, Cell>;

  Matching() = default;
  explicit Matching(const std::vector<Pair>& pairs);

  /// Throws contract_violation unless degree(upper) = degree(lower) + 1.
  void insert(const Cell& lower, const Cell& upper);
  void erase(const Cell& lower, const Cell& upper);

  const std::set<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(const Cell& lower, const Cell& upper) const {
    return pairs_.contains({lower, upper});
  }
  bool is_matched(const Cell& cell) const { return partners_.contains(cell); }

  /// The first partner of a cell, if it is matched at all.
  std::optional<Cell> partner(const Cell& cell) const;
  std::size_t occurrences(const Cell& cell) const;

  friend bool operator==(const Matching& lhs, const Matching& rhs) {
    return lhs.pairs_ == rhs.pairs_;
  }

 private:
  std::set<Pair> pairs_;
  std::map<Cell, std::vector<Cell>> partners_;
};

/// A G-orbit of matched pairs, sorted; front() is the representative.
struct PairOrbit {
  std::vector<Matching::Pair> pairs;

  const Matching::Pair& representative() const { return pairs.front(); }
  int upper_degree() const { return pairs.front().second.degree; }

  friend bool operator==(const PairOrbit&, const PairOrbit&) = default;
};

/// The diagonal orbit G(a, b).
PairOrbit pair_orbit(const GroupAction& group, const Matching::Pair& pair);

/// Pair orbits of an equivariant matching, ordered by representative.
std::vector<PairOrbit> pair_orbits(const Matching& matching, const GroupAction& group);

struct Witness {
  std::string check;   // which of the five checks failed
  std::string detail;  // human-readable explanation
  std::vector<Cell> cells;
};

struct ValidationReport {
  bool matching_ok = true;
  bool covering_ok = true;
  bool invertible_ok = true;
  bool acyclic_ok = true;
  bool equivariant_ok = true;
  std::vector<Witness> witnesses;

  bool all_ok() const {
    return matching_ok && covering_ok && invertible_ok && acyclic_ok && equivariant_ok;
  }
};

/// Runs all five checks: matching shape, covering pairs, invertible weights,
/// acyclicity (quotient construction cross-checked against the digraph
/// search) and G-equivariance under every generator.
ValidationReport validate(const ChainComplex& complex, const GroupAction& group,
                          const Matching& matching);

enum class MatchPolicy { lexicographic, max_orbit };

MatchPolicy parse_policy(const std::string& text);

/// Greedy search that adds whole pair orbits G(a, b) while the result stays
/// an acyclic matching with unit weights.
Matching greedy_equivariant_match(const ChainComplex& complex, const GroupAction& group,
                                  MatchPolicy policy = MatchPolicy::lexicographic);

/// Builds the small-fiber quotient for a validated matching and checks that
/// its two-element fibers are exactly M. When a group is given it also
/// checks φ(g·x) = g·φ(x) for every generator. Throws acyclicity_failure or
/// internal_invariant.
QuotientPoset small_fiber_map(const ChainComplex& complex, const Matching& matching,
                              const GroupAction* group = nullptr);

struct VanishingViolation {
  Matching::Pair pair;
  Cell translated_upper;
};

/// For (a, b) in M and g·b ≠ b, k_a(∂(g·b)) must vanish.
std::vector<VanishingViolation> check_cross_orbit_vanishing(const ChainComplex& complex,
                                                            const GroupAction& group,
                                                            const Matching& matching);

}  // namespace eqmorse
