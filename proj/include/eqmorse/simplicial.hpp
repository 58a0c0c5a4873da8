#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqmorse/action.hpp"
#include "eqmorse/coefficients.hpp"
#include "eqmorse/complex.hpp"

namespace eqmorse {

struct VertexPermutation {
  std::string name;
  std::map<std::string, std::string> map;  // unmapped vertices are fixed

  friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;
};

struct SimplicialInput {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::string>> facets;
  std::vector<VertexPermutation> generators;
  RingSpec ring = RingSpec::integers();

  friend bool operator==(const SimplicialInput&, const SimplicialInput&) = default;
};

struct SimplicialComplex {
  ChainComplex complex;
  GroupAction group;
  std::vector<Permutation> generators;  // the induced action on simplices
};

// Simplex labels are the vertices in vertex-list order joined by "|".
std::string simplex_label(const std::vector<std::string>& sorted_vertices);

/// Builds the simplicial chain complex and the induced action.
///
/// The least simplex of each orbit carries the orientation of its sorted
/// vertex order; the rest of the orbit gets the orientation transported
/// along the generators, so that the action permutes the oriented basis.
/// With a trivial group this is the plain sorted-vertex orientation.
/// An orbit that would need two orientations is an orientation-reversing
/// action; it is rejected unless the ring is ℤ/2.
SimplicialComplex ingest_simplicial(const SimplicialInput& input);

}  // namespace eqmorse
