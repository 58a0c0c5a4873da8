#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eqmorse/action.hpp"
#include "eqmorse/complex.hpp"

namespace eqmorse {

class Matching;

struct CoverEdge {
  Cell lower;
  Cell upper;
  Scalar weight;  // w(upper ≻ lower) = k_lower(∂ upper)
};

/// The covering relations of P(C, Ω): a ⋖ b whenever k_a(∂b) ≠ 0.
class CoverGraph {
 public:
  const std::vector<Cell>& nodes() const noexcept { return nodes_; }
  /// Sorted by (lower, upper).
  const std::vector<CoverEdge>& edges() const noexcept { return edges_; }

  std::size_t node_index(const Cell& cell) const;
  bool has_node(const Cell& cell) const { return index_.contains(cell); }

  /// Node indices covering / covered by node i.
  const std::vector<std::size_t>& up(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& down(std::size_t i) const { return down_[i]; }

  /// Weight of the covering relation, or zero when b does not cover a.
  Scalar weight(const Cell& a, const Cell& b) const;

  friend CoverGraph build_cover_graph(const ChainComplex&);

 private:
  RingSpec ring_ = RingSpec::integers();
  std::vector<Cell> nodes_;
  std::map<Cell, std::size_t> index_;
  std::vector<CoverEdge> edges_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index_;
};

CoverGraph build_cover_graph(const ChainComplex& complex);

/// x ≤ y in P(C, Ω): equal, or joined by an ascending chain of covers.
bool leq(const CoverGraph& poset, const Cell& x, const Cell& y);

/// P(C, Ω) with every matched pair glued to a single point. Its order is the
/// reflexive-transitive closure of the covers between classes.
class QuotientPoset {
 public:
  std::size_t size() const noexcept { return fibers_.size(); }
  const std::vector<Cell>& fiber(std::size_t cls) const { return fibers_.at(cls); }
  bool is_two_fiber(std::size_t cls) const { return fibers_.at(cls).size() == 2; }
  std::size_t class_of(const Cell& cell) const;

  bool leq(std::size_t p, std::size_t q) const { return below_[q][p] != 0; }

  /// Cardinality-2 fibers as (lower, upper) pairs; this is M(φ).
  std::vector<std::pair<Cell, Cell>> two_fibers() const;

  /// Induced covering relations (p, q) with p < q, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& relations() const { return relations_; }

  friend std::variant<QuotientPoset, std::vector<Cell>> quotient_poset(const CoverGraph&,
                                                                       const Matching&);

 private:
  std::vector<std::vector<Cell>> fibers_;
  std::map<Cell, std::size_t> class_of_;
  std::vector<std::pair<std::size_t, std::size_t>> relations_;
  std::vector<std::vector<char>> below_;  // below_[q][p] iff p ≤ q
};

/// Builds the quotient, or returns a cycle witness when the gluing breaks
/// antisymmetry (the matching is not acyclic). The witness is a closed path
/// x0 → x1 → ... → x0 that goes up along matched pairs and down along the
/// other covers. Throws contract_violation when M is not a matching of
/// covering pairs.
std::variant<QuotientPoset, std::vector<Cell>> quotient_poset(const CoverGraph& poset,
                                                              const Matching& matching);

/// Shortest directed cycle in the matching digraph (matched covers point up,
/// the rest point down); ties go to the lexicographically least start.
/// Independent of the quotient construction.
std::optional<std::vector<Cell>> find_matching_cycle(const CoverGraph& poset,
                                                     const Matching& matching);

/// Cycle test on the digraph restricted to degrees lower and lower + 1.
bool has_matching_cycle_in_degrees(const CoverGraph& poset, const Matching& matching, int lower);

struct IncomparabilityViolation {
  Cell x;
  Cell y;
};

/// Distinct elements of one orbit that are comparable in P(C, Ω).
std::vector<IncomparabilityViolation> check_orbit_incomparability(const CoverGraph& poset,
                                                                  const GroupAction& group);

/// The same check on the quotient: distinct classes of one G-orbit that are
/// comparable. Classes are moved by moving their fibers.
std::vector<std::pair<std::size_t, std::size_t>> check_orbit_incomparability(
    const QuotientPoset& quotient, const GroupAction& group);

std::string to_dot(const CoverGraph& poset, const Matching* matching = nullptr);
std::string to_dot(const QuotientPoset& quotient);

}  // namespace eqmorse
