#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqmorse/action.hpp"
#include "eqmorse/complex.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/simplicial.hpp"

namespace corpus {

using eqmorse::Cell;
using eqmorse::ChainComplex;
using eqmorse::GroupAction;
using eqmorse::Matching;
using eqmorse::Permutation;
using eqmorse::RingSpec;

using Column = std::vector<std::pair<std::string, long>>;

// Degrees are taken from the basis map; boundary columns list integer coefficients.
ChainComplex make_complex(RingSpec ring, const std::map<int, std::vector<std::string>>& basis,
                          const std::map<std::string, Column>& boundary);

Matching make_matching(const std::vector<std::pair<Cell, Cell>>& pairs);

ChainComplex point(RingSpec ring = RingSpec::integers());
ChainComplex path(RingSpec ring = RingSpec::integers());   // v0, v1, e
ChainComplex path3(RingSpec ring = RingSpec::integers());  // v0, v1, v2, e01, e12
ChainComplex triangle(RingSpec ring = RingSpec::integers());
ChainComplex full_simplex(RingSpec ring = RingSpec::integers());
ChainComplex square(RingSpec ring = RingSpec::integers());
ChainComplex hexagon(RingSpec ring = RingSpec::integers());

// Rotation of the hexagon by `steps` positions.
Permutation hexagon_rotation(int steps, const std::string& name = "r");
GroupAction hexagon_group(const ChainComplex& hexagon, int order);  // order 1, 2, 3 or 6

Matching hexagon_z2_matching();  // {(v1,e01),(v4,e34),(v2,e12),(v5,e45)}
Matching hexagon_z3_matching();  // {(v1,e01),(v3,e23),(v5,e45)}
Matching square_cycle_matching();

eqmorse::SimplicialInput rp2_input(RingSpec ring = RingSpec::integers());
eqmorse::SimplicialInput torus_input(RingSpec ring = RingSpec::integers(), bool with_rotation = true);

// One reduction scenario: complex, action, matching.
struct Instance {
  std::string name;
  ChainComplex complex;
  GroupAction group;
  Matching matching;
};

/// The fixed corpus: every named complex with hand-picked and greedy
/// matchings under both policies.
std::vector<Instance> standard_instances();

/// The hexagon with rotation groups of order 2, 3 and 6.
std::vector<Instance> hexagon_instances();

/// Random closed subfamily of faces of the 5-simplex, trivial group, greedy matching.
Instance random_simplex_subcomplex(std::uint64_t seed);

/// Random cyclic polygon (optionally coned to a disk) with n ≤ 24 vertices and
/// a rotation subgroup, greedy matching.
Instance random_cyclic_polygon(std::uint64_t seed);

}  // namespace corpus
