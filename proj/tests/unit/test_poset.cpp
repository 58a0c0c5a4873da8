#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/poset.hpp"

using namespace eqmorse;

namespace {
const RingSpec Z = RingSpec::integers();

bool acyclic_by_degrees(const CoverGraph& p, const Matching& m, const ChainComplex& c) {
  for (int d = c.min_degree(); d < c.max_degree(); ++d) {
    if (has_matching_cycle_in_degrees(p, m, d)) return false;
  }
  return true;
}

// A random matching made of arbitrary cover edges, possibly cyclic.
Matching random_matching(const CoverGraph& p, std::mt19937_64& rng) {
  Matching m;
  std::set<Cell> used;
  for (const auto& e : p.edges()) {
    if (rng() % 3 != 0 || used.contains(e.lower) || used.contains(e.upper)) continue;
    m.insert(e.lower, e.upper);
    used.insert(e.lower);
    used.insert(e.upper);
  }
  return m;
}
}  // namespace

TEST_CASE("cover graph examples") {
  CHECK(build_cover_graph(corpus::point()).edges().empty());
  auto path = build_cover_graph(corpus::path());
  REQUIRE(path.edges().size() == 2);
  CHECK(path.edges()[0].lower == Cell{0, "v0"});
  CHECK(path.edges()[0].weight == Scalar(Z, -1L));
  CHECK(path.edges()[1].lower == Cell{0, "v1"});
  CHECK(path.edges()[1].weight == Scalar(Z, 1L));
  auto hex = build_cover_graph(corpus::hexagon());
  CHECK(hex.edges().size() == 12);
  for (const auto& e : hex.edges()) CHECK((e.weight.is_one() || (-e.weight).is_one()));
  CHECK(path.weight(Cell{0, "v0"}, Cell{0, "v1"}).is_zero());
}

TEST_CASE("leq examples") {
  auto path = build_cover_graph(corpus::path());
  CHECK(leq(path, Cell{0, "v0"}, Cell{0, "v0"}));
  CHECK(leq(path, Cell{0, "v0"}, Cell{1, "e"}));
  CHECK_FALSE(leq(path, Cell{1, "e"}, Cell{0, "v0"}));
  CHECK_FALSE(leq(path, Cell{0, "v0"}, Cell{0, "v1"}));
  auto simplex = build_cover_graph(corpus::full_simplex());
  CHECK(leq(simplex, Cell{0, "v0"}, Cell{2, "t012"}));
}

TEST_CASE("quotient examples") {
  auto path = build_cover_graph(corpus::path());
  auto empty = quotient_poset(path, Matching{});
  REQUIRE(std::holds_alternative<QuotientPoset>(empty));
  CHECK(std::get<QuotientPoset>(empty).size() == 3);

  auto glued = quotient_poset(path, corpus::make_matching({{{0, "v1"}, {1, "e"}}}));
  REQUIRE(std::holds_alternative<QuotientPoset>(glued));
  const auto& q = std::get<QuotientPoset>(glued);
  CHECK(q.size() == 2);
  const auto low = q.class_of(Cell{0, "v0"});
  const auto high = q.class_of(Cell{1, "e"});
  CHECK(q.class_of(Cell{0, "v1"}) == high);
  CHECK(q.leq(low, high));
  CHECK_FALSE(q.leq(high, low));

  auto square = build_cover_graph(corpus::square());
  auto cyc = quotient_poset(square, corpus::square_cycle_matching());
  REQUIRE(std::holds_alternative<std::vector<Cell>>(cyc));
  const std::vector<Cell> expected{{0, "v0"}, {1, "e01"}, {0, "v1"}, {1, "e12"}, {0, "v2"},
                                   {1, "e23"}, {0, "v3"}, {1, "e30"}, {0, "v0"}};
  CHECK(std::get<std::vector<Cell>>(cyc) == expected);
  CHECK(find_matching_cycle(square, corpus::square_cycle_matching()) == expected);
}

TEST_CASE("quotient rejects non-matchings") {
  auto path = build_cover_graph(corpus::path());
  Matching twice = corpus::make_matching({{{0, "v1"}, {1, "e"}}, {{0, "v0"}, {1, "e"}}});
  CHECK_THROWS_AS(quotient_poset(path, twice), Error);
  auto tri = build_cover_graph(corpus::triangle());
  CHECK_THROWS_AS(quotient_poset(tri, corpus::make_matching({{{0, "v2"}, {1, "e01"}}})), Error);
}

TEST_CASE("orbit incomparability examples") {
  ChainComplex hex = corpus::hexagon();
  auto p = build_cover_graph(hex);
  CHECK(check_orbit_incomparability(p, GroupAction::trivial(hex)).empty());
  CHECK(check_orbit_incomparability(p, corpus::hexagon_group(hex, 2)).empty());
  CHECK(check_orbit_incomparability(p, corpus::hexagon_group(hex, 6)).empty());
  CHECK_FALSE(leq(p, Cell{0, "v0"}, Cell{0, "v3"}));
}

TEST_CASE("the two acyclicity tests agree on random matchings") {
  std::mt19937_64 rng(3);
  int cyclic = 0;
  for (std::uint64_t s = 0; s < 150; ++s) {
    auto inst = corpus::random_simplex_subcomplex(s);
    auto p = build_cover_graph(inst.complex);
    Matching m = random_matching(p, rng);
    const bool quotient_ok = std::holds_alternative<QuotientPoset>(quotient_poset(p, m));
    const bool digraph_ok = !find_matching_cycle(p, m).has_value();
    CHECK(quotient_ok == digraph_ok);
    CHECK(acyclic_by_degrees(p, m, inst.complex) == digraph_ok);
    cyclic += !digraph_ok;
  }
  for (int k = 0; k < 40; ++k) {
    ChainComplex sq = corpus::square();
    auto p = build_cover_graph(sq);
    Matching m = random_matching(p, rng);
    CHECK(std::holds_alternative<QuotientPoset>(quotient_poset(p, m)) == !find_matching_cycle(p, m));
  }
  CHECK(cyclic > 0);
}

TEST_CASE("projection to the quotient is order preserving") {
  for (const auto& inst : corpus::standard_instances()) {
    auto p = build_cover_graph(inst.complex);
    auto q = std::get<QuotientPoset>(quotient_poset(p, inst.matching));
    for (const Cell& x : p.nodes()) {
      for (const Cell& y : p.nodes()) {
        if (leq(p, x, y)) CHECK(q.leq(q.class_of(x), q.class_of(y)));
      }
    }
  }
}

TEST_CASE("dot export") {
  ChainComplex path = corpus::path();
  Matching m = corpus::make_matching({{{0, "v1"}, {1, "e"}}});
  std::string dot = to_dot(build_cover_graph(path), &m);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("red") != std::string::npos);
  auto q = std::get<QuotientPoset>(quotient_poset(build_cover_graph(path), m));
  CHECK(to_dot(q).find("digraph") != std::string::npos);
}
