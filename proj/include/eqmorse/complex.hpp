#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "eqmorse/coefficients.hpp"

namespace eqmorse {

/// A basis element: a label that is unique within its degree.
struct Cell {
  int degree = 0;
  std::string label;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend bool operator==(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& cell);

/// A homogeneous element of one chain group, stored as a sparse map from
/// basis labels to nonzero coefficients.
class Chain {
 public:
  Chain(RingSpec ring, int degree) : ring_(ring), degree_(degree) {}

  const RingSpec& ring() const noexcept { return ring_; }
  int degree() const noexcept { return degree_; }
  const std::map<std::string, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// k_label(this); zero when the label does not occur.
  Scalar coefficient(const std::string& label) const;

  /// Adds coeff * label, dropping the term when it cancels.
  void add_term(const std::string& label, const Scalar& coeff);

  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  Chain scaled(const Scalar& factor) const;

  friend bool operator==(const Chain&, const Chain&);

 private:
  RingSpec ring_;
  int degree_;
  std::map<std::string, Scalar> terms_;
};

/// A finitely generated free chain complex with explicit labeled bases.
///
/// Degrees outside [min_degree, max_degree] are zero modules. Bases are kept
/// sorted by label, and the boundary of every basis element is stored as a
/// sparse chain one degree down. Immutable once constructed.
class ChainComplex {
 public:
  using Basis = std::map<int, std::vector<std::string>>;
  using Boundary = std::map<int, std::map<std::string, Chain>>;

  /// Validates structure: unique labels, boundary terms referencing existing
  /// labels one degree down, no boundary on the lowest degree. Missing
  /// boundary entries are zero. Does not check the chain axiom.
  ChainComplex(RingSpec ring, int min_degree, int max_degree, Basis basis, Boundary boundary);

  /// The empty complex concentrated nowhere.
  static ChainComplex zero(RingSpec ring);

  const RingSpec& ring() const noexcept { return ring_; }
  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return max_degree_; }

  const std::vector<std::string>& basis(int degree) const;
  std::size_t rank(int degree) const { return basis(degree).size(); }
  std::size_t total_rank() const;

  bool contains(const Cell& cell) const;
  std::optional<std::size_t> index_of(int degree, const std::string& label) const;

  /// ∂ of a basis element, as a chain one degree down.
  const Chain& boundary(const Cell& cell) const;
  Chain boundary(const Chain& chain) const;

  /// All basis elements, ordered by (degree, label).
  std::vector<Cell> cells() const;

  friend bool operator==(const ChainComplex&, const ChainComplex&);

 private:
  struct Degree {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Chain> columns;
  };

  const Degree* find_degree(int degree) const;

  RingSpec ring_;
  int min_degree_;
  int max_degree_;
  std::map<int, Degree> degrees_;
};

/// k_a(x): coefficient of basis element a in the chain x.
Scalar coefficient(const Cell& a, const Chain& x);

struct ComplexViolation {
  Cell cell;
  Chain boundary_of_boundary;
};

/// Lists every basis element b with ∂∂b ≠ 0.
std::vector<ComplexViolation> check_complex(const ChainComplex& complex);

/// A degree-wise linear map given by the images of source basis elements.
/// components[n][label] is the image of (n, label) in the target basis.
struct GradedMap {
  std::map<int, std::map<std::string, Chain>> components;

  /// Image of a basis element; identity_default makes omitted columns act as
  /// the identity (used for automorphisms that only touch a few elements).
  Chain image(const Cell& cell, const RingSpec& ring, bool identity_default) const;

  friend bool operator==(const GradedMap&, const GradedMap&) = default;
};

/// Re-expresses C in the basis {f_n(b)}. Columns omitted from f are identity
/// columns. The new basis element f_n(b) keeps b's label unless relabel maps
/// it to a new one. Throws singular_basis_change if some f_n is not
/// invertible over the ring.
ChainComplex apply_automorphism(
    const ChainComplex& complex, const GradedMap& f,
    const std::map<int, std::map<std::string, std::string>>& relabel = {});

/// Block-diagonal direct sum; labels get the given prefixes.
ChainComplex direct_sum(const ChainComplex& lhs, const ChainComplex& rhs,
                        const std::string& lhs_prefix = "0/",
                        const std::string& rhs_prefix = "1/");

/// Restriction to a per-degree subset of the basis. Throws
/// not_closed_under_boundary naming the first element whose boundary leaves
/// the subset.
ChainComplex span_subcomplex(const ChainComplex& complex,
                             const std::map<int, std::set<std::string>>& subset);

/// Coefficient change: from ℤ to any ring, or the identity change.
ChainComplex change_ring(const ChainComplex& complex, RingSpec ring);

}  // namespace eqmorse
