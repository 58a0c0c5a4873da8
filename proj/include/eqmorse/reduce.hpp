#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eqmorse/action.hpp"
#include "eqmorse/complex.hpp"
#include "eqmorse/linalg.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/poset.hpp"

namespace eqmorse {

/// The two-term subcomplex span(Gb) → span(G∂b) split off by one
/// elimination. Bottom basis elements are the new vectors g∂b, labeled by the
/// matched partner with a generation suffix ("v1@3").
struct AcyclicPiece {
  int degree = 0;                   // degree of the top row
  std::vector<std::string> top;     // Gb, sorted
  std::vector<std::string> bottom;  // labels of G∂b, sorted
  Matrix boundary_block;            // rows: bottom, columns: top
  Matrix contraction;               // rows: top, columns: bottom

  friend bool operator==(const AcyclicPiece&, const AcyclicPiece&) = default;
};

/// Label of the new basis vector g∂b that replaces the matched element a at
/// the given elimination step.
std::string generation_label(const std::string& label, std::size_t step);

/// Inverse of generation_label; returns the original label.
std::string strip_generation(const std::string& label);

struct WeightViolation {
  Cell upper;
  Cell lower;
  Scalar before;
  Scalar after;
};

/// One application of the elimination: basis changes on degrees n-1 and n,
/// the piece split off, and the matching induced on what is left.
struct ReductionStep {
  std::size_t index = 0;  // 1-based; also the generation suffix
  int degree = 0;         // n, the degree of the matched upper elements
  PairOrbit eliminated_orbit;
  GradedMap f_lower;  // degree n-1: a' ↦ ∂b' (other columns identity)
  GradedMap f_upper;  // degree n: x ↦ x - Σ c(x, b') b' (other columns identity)
  AcyclicPiece piece;
  Matching induced_matching;
  ChainComplex residual;
  std::vector<WeightViolation> weight_report;
};

struct ReductionResult {
  ChainComplex input;
  ChainComplex morse_complex;
  std::vector<AcyclicPiece> pieces;
  std::vector<ReductionStep> steps;
  /// Materialized isomorphism C → C^M ⊕ T with target labels "M/..." and
  /// "T/...". Present when the reduction ran with verification.
  std::optional<GradedMap> iso;
};

/// The acyclic summand T = ⊕ pieces as a chain complex.
ChainComplex pieces_complex(const std::vector<AcyclicPiece>& pieces, const ChainComplex& like);

/// C^M ⊕ T with the "M/" and "T/" prefixes used by the isomorphism.
ChainComplex decomposition_target(const ReductionResult& result);

/// Composes the per-step basis changes into C → C^M ⊕ T.
GradedMap materialize_iso(const ReductionResult& result);

/// Picks the pair orbit whose class is minimal among the two-element fibers
/// of the quotient, ties broken by representative.
PairOrbit select_minimal_orbit(const QuotientPoset& quotient, const std::vector<PairOrbit>& remaining);

/// Eliminates one minimal pair orbit. Checks both closure properties of the
/// new basis exactly and throws internal_invariant naming the offending
/// element if either fails.
ReductionStep eliminate_orbit(const ChainComplex& complex, const GroupAction& group,
                              const Matching& matching, const PairOrbit& orbit, std::size_t index);

/// Compares w(x ≻ y) before and after a step for all surviving matched
/// elements x, y in adjacent degrees.
std::vector<WeightViolation> verify_weight_preservation(const ReductionStep& step,
                                                        const ChainComplex& before,
                                                        const ChainComplex& after);

struct HomotopyData {
  int degree = 0;  // the homotopy lives in degree - 1 → degree
  Matrix component;
};

/// The only nonzero homotopy component of a piece, (∂^{Gb})^{-1}. Checks
/// ∂P = 1 and P∂ = 1 and, when a group is given, that P commutes with it.
HomotopyData contraction_homotopy(const AcyclicPiece& piece, const GroupAction* group = nullptr);

struct ReduceOptions {
  /// Runs every per-step and final invariant check and materializes the iso.
  bool verify = true;
};

ReductionResult reduce(const ChainComplex& complex, const GroupAction& group,
                       const Matching& matching, const ReduceOptions& options = {});

struct DecompositionReport {
  bool chain_map = true;
  bool invertible = true;
  bool equivariant = true;
  std::vector<std::string> problems;

  bool ok() const { return chain_map && invertible && equivariant; }
};

/// Re-checks the isomorphism: ∂' ∘ iso = iso ∘ ∂, invertibility in every
/// degree, and g ∘ iso = iso ∘ g for every generator.
DecompositionReport verify_decomposition(const ReductionResult& result, const GroupAction& group);

/// The group acting on C^M ⊕ T through the labels of the original complex.
std::vector<Permutation> target_generators(const ReductionResult& result,
                                           const GroupAction& group);

}  // namespace eqmorse
