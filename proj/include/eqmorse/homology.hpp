#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "eqmorse/complex.hpp"

namespace eqmorse {

// The homology oracle deliberately has its own integer and field linear
// algebra; nothing here goes through linalg.hpp or the reduction code.

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SmithForm {
  IntMatrix diagonal;  // D, same shape as the input
  IntMatrix row_ops;   // U, unimodular, rows × rows
  IntMatrix col_ops;   // V, unimodular, cols × cols

  /// Nonzero diagonal entries d_1 | d_2 | ... in order.
  std::vector<mpz_class> invariant_factors() const;
};

/// U·A·V = D with D diagonal, nonnegative and each entry dividing the next.
/// Pivots on the smallest nonzero absolute value, lowest (row, col) first.
/// The transform identity is re-verified before returning.
SmithForm smith_normal_form(const IntMatrix& a);

IntMatrix multiply(const IntMatrix& lhs, const IntMatrix& rhs);

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& m);

struct DegreeHomology {
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;  // invariant factors ≥ 2, each dividing the next

  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologyProfile {
  std::map<int, DegreeHomology> degrees;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Betti numbers and torsion over ℤ via Smith normal form, or Betti numbers
/// over ℚ and ℤ/p via field ranks. Throws unsupported_coefficients for ℤ/m
/// with m composite.
HomologyProfile homology(const ChainComplex& complex);

struct HomologyComparison {
  bool equal = true;
  std::optional<int> first_difference;
  std::string detail;
};

HomologyComparison compare(const ChainComplex& lhs, const ChainComplex& rhs);

}  // namespace eqmorse
