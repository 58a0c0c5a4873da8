#include <doctest.h>

#include "corpus.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/reduce.hpp"

using namespace eqmorse;

namespace {
const RingSpec Z = RingSpec::integers();

Matrix matrix(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(Z, rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long x : row) m.at(r, c++) = Scalar(Z, x);
    ++r;
  }
  return m;
}

long euler(const ChainComplex& c) {
  long chi = 0;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.rank(d));
  }
  return chi;
}
}  // namespace

TEST_CASE("select_minimal_orbit examples") {
  ChainComplex path3 = corpus::path3();
  auto g = GroupAction::trivial(path3);
  Matching m = corpus::make_matching({{{0, "v1"}, {1, "e01"}}, {{0, "v2"}, {1, "e12"}}});
  auto p = build_cover_graph(path3);
  auto q = std::get<QuotientPoset>(quotient_poset(p, m));
  auto orbits = pair_orbits(m, g);
  CHECK(select_minimal_orbit(q, orbits).representative() == Matching::Pair{{0, "v1"}, {1, "e01"}});
  // v1 is a face of e12, so the two classes are in fact comparable
  CHECK(q.leq(q.class_of(Cell{0, "v1"}), q.class_of(Cell{0, "v2"})));
}

TEST_CASE("selection respects the order of the quotient") {
  // {v1, e01} lies below {v2, e12}; reversing names must not change the choice
  ChainComplex c = corpus::make_complex(Z, {{0, {"a", "b", "c"}}, {1, {"x", "y"}}},
                                        {{"y", {{"b", 1}, {"a", -1}}}, {"x", {{"c", 1}, {"b", -1}}}});
  Matching m = corpus::make_matching({{{0, "b"}, {1, "y"}}, {{0, "c"}, {1, "x"}}});
  auto q = std::get<QuotientPoset>(quotient_poset(build_cover_graph(c), m));
  auto orbits = pair_orbits(m, GroupAction::trivial(c));
  CHECK(select_minimal_orbit(q, orbits).representative() == Matching::Pair{{0, "b"}, {1, "y"}});
}

TEST_CASE("eliminate on the path") {
  ChainComplex path = corpus::path();
  auto g = GroupAction::trivial(path);
  Matching m = corpus::make_matching({{{0, "v1"}, {1, "e"}}});
  ReductionStep step = eliminate_orbit(path, g, m, pair_orbits(m, g).front(), 1);
  Chain expected(Z, 0);
  expected.add_term("v1", Scalar(Z, 1L));
  expected.add_term("v0", Scalar(Z, -1L));
  CHECK(step.f_lower.components.at(0).at("v1") == expected);
  CHECK(step.residual.total_rank() == 1);
  CHECK(step.residual.basis(0) == std::vector<std::string>{"v0"});
  CHECK(step.piece.top == std::vector<std::string>{"e"});
  CHECK(step.piece.bottom == std::vector<std::string>{"v1@1"});
  CHECK(step.piece.boundary_block == matrix({{1}}));
  CHECK(step.induced_matching.empty());
}

TEST_CASE("eliminate one hexagon orbit under Z2") {
  ChainComplex hex = corpus::hexagon();
  auto z2 = corpus::hexagon_group(hex, 2);
  Matching m = corpus::hexagon_z2_matching();
  PairOrbit first = pair_orbits(m, z2).front();
  CHECK(first.pairs.size() == 2);
  ReductionStep step = eliminate_orbit(hex, z2, m, first, 1);
  CHECK(step.residual.rank(0) == 4);
  CHECK(step.residual.rank(1) == 4);
  CHECK(step.residual.basis(0) == std::vector<std::string>{"v0", "v2", "v3", "v5"});
  CHECK(step.piece.boundary_block.rows() == 2);
  CHECK(try_inverse(step.piece.boundary_block).has_value());
  CHECK(check_complex(step.residual).empty());
  GroupAction rest = z2.restricted_to(step.residual);
  CHECK(verify_g_map(step.residual, rest).empty());
  CHECK(step.induced_matching.size() == 2);
  CHECK(verify_weight_preservation(step, hex, step.residual).empty());
}

TEST_CASE("f_upper fixes elements with no coefficient on the orbit") {
  ChainComplex hex = corpus::hexagon();
  auto z2 = corpus::hexagon_group(hex, 2);
  Matching m = corpus::hexagon_z2_matching();
  ReductionStep step = eliminate_orbit(hex, z2, m, pair_orbits(m, z2).front(), 1);
  // e23 has no face in {v1, v4}, so its column is untouched
  Chain e23 = step.f_upper.image(Cell{1, "e23"}, Z, true);
  Chain id(Z, 1);
  id.add_term("e23", Scalar(Z, 1L));
  CHECK(e23 == id);
}

TEST_CASE("weight preservation examples") {
  ChainComplex path = corpus::path();
  auto g = GroupAction::trivial(path);
  Matching single = corpus::make_matching({{{0, "v1"}, {1, "e"}}});
  ReductionStep s0 = eliminate_orbit(path, g, single, pair_orbits(single, g).front(), 1);
  CHECK(verify_weight_preservation(s0, path, s0.residual).empty());

  ChainComplex path3 = corpus::path3();
  auto g3 = GroupAction::trivial(path3);
  Matching m = corpus::make_matching({{{0, "v1"}, {1, "e01"}}, {{0, "v2"}, {1, "e12"}}});
  ReductionStep s = eliminate_orbit(path3, g3, m, pair_orbits(m, g3).front(), 1);
  CHECK(verify_weight_preservation(s, path3, s.residual).empty());
  CHECK(s.residual.boundary(Cell{1, "e12"}).coefficient("v2") == Scalar(Z, 1L));
}

TEST_CASE("contraction homotopy examples") {
  AcyclicPiece plus{1, {"e"}, {"v@1"}, matrix({{1}}), matrix({{1}})};
  CHECK(contraction_homotopy(plus).component == matrix({{1}}));
  AcyclicPiece minus{1, {"e"}, {"v@1"}, matrix({{-1}}), matrix({{-1}})};
  CHECK(contraction_homotopy(minus).component == matrix({{-1}}));

  ChainComplex hex = corpus::hexagon();
  auto z2 = corpus::hexagon_group(hex, 2);
  ReductionResult r = reduce(hex, z2, corpus::hexagon_z2_matching());
  for (const auto& piece : r.pieces) {
    HomotopyData h = contraction_homotopy(piece, &z2);
    CHECK(h.component.rows() == 2);
    CHECK((piece.boundary_block * h.component).is_identity());
    CHECK((h.component * piece.boundary_block).is_identity());
  }
}

TEST_CASE("reduce examples") {
  ChainComplex hex = corpus::hexagon();
  auto z2 = corpus::hexagon_group(hex, 2);
  ReductionResult none = reduce(hex, z2, Matching{});
  CHECK(none.morse_complex == hex);
  CHECK(none.pieces.empty());
  for (const Cell& c : hex.cells()) {
    Chain expected(Z, c.degree);
    expected.add_term("M/" + c.label, Scalar(Z, 1L));
    CHECK(none.iso->image(c, Z, false) == expected);
  }

  ReductionResult two = reduce(hex, z2, corpus::hexagon_z2_matching());
  CHECK(two.morse_complex.rank(0) == 2);
  CHECK(two.morse_complex.rank(1) == 2);
  CHECK(two.pieces.size() == 2);
  for (const auto& p : two.pieces) CHECK(p.top.size() == 2);

  auto z3 = corpus::hexagon_group(hex, 3);
  ReductionResult three = reduce(hex, z3, corpus::hexagon_z3_matching());
  CHECK(three.morse_complex.rank(0) == 3);
  CHECK(three.morse_complex.rank(1) == 3);
  REQUIRE(three.pieces.size() == 1);
  CHECK(three.pieces[0].top.size() == 3);
}

TEST_CASE("reduce refuses bad matchings") {
  ChainComplex sq = corpus::square();
  CHECK_THROWS_AS(reduce(sq, GroupAction::trivial(sq), corpus::square_cycle_matching()), Error);
  ChainComplex hex = corpus::hexagon();
  Matching broken = corpus::hexagon_z2_matching();
  broken.erase(Cell{0, "v4"}, Cell{1, "e34"});
  CHECK_THROWS_AS(reduce(hex, corpus::hexagon_group(hex, 2), broken), Error);
}

TEST_CASE("reduction invariants on the corpus") {
  for (const auto& inst : corpus::standard_instances()) {
    ReductionResult r = reduce(inst.complex, inst.group, inst.matching);
    CHECK(euler(r.morse_complex) == euler(inst.complex));
    CHECK(verify_decomposition(r, inst.group).ok());
    CHECK(verify_g_map(r.morse_complex, inst.group.restricted_to(r.morse_complex)).empty());
    std::size_t matched_cells = 2 * inst.matching.size();
    CHECK(r.morse_complex.total_rank() + matched_cells == inst.complex.total_rank());
    ChainComplex target = decomposition_target(r);
    CHECK(check_complex(target).empty());
    CHECK(target.total_rank() == inst.complex.total_rank());
  }
}

TEST_CASE("generation labels") {
  CHECK(generation_label("v1", 3) == "v1@3");
  CHECK(strip_generation("v1@3") == "v1");
  CHECK(strip_generation("v1") == "v1");
  CHECK(strip_generation("a@b") == "a@b");
}
