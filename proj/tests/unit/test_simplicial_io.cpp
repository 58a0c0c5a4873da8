#include <doctest.h>

#include "corpus.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/homology.hpp"
#include "eqmorse/io.hpp"
#include "eqmorse/reduce.hpp"
#include "eqmorse/simplicial.hpp"

using namespace eqmorse;

namespace {
const RingSpec Z = RingSpec::integers();

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::internal_invariant;
}

SimplicialInput hexagon_input(bool reflection) {
  SimplicialInput in;
  for (int i = 0; i < 6; ++i) in.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < 6; ++i) in.facets.push_back({in.vertices[i], in.vertices[(i + 1) % 6]});
  VertexPermutation g{reflection ? "s" : "r", {}};
  for (int i = 0; i < 6; ++i) {
    g.map[in.vertices[i]] = in.vertices[reflection ? (7 - i) % 6 : (i + 1) % 6];
  }
  in.generators.push_back(g);
  return in;
}
}  // namespace

TEST_CASE("ingest a path") {
  SimplicialInput in{{"v0", "v1"}, {{"v0", "v1"}}, {}, Z};
  SimplicialComplex s = ingest_simplicial(in);
  CHECK(s.complex.basis(0) == std::vector<std::string>{"v0", "v1"});
  CHECK(s.complex.basis(1) == std::vector<std::string>{"v0|v1"});
  const Chain& b = s.complex.boundary(Cell{1, "v0|v1"});
  CHECK(b.coefficient("v1") == Scalar(Z, 1L));
  CHECK(b.coefficient("v0") == Scalar(Z, -1L));
  CHECK(s.group.order() == 1);
}

TEST_CASE("hexagon rotation is accepted over the integers") {
  SimplicialComplex s = ingest_simplicial(hexagon_input(false));
  CHECK(s.group.order() == 6);
  CHECK(check_complex(s.complex).empty());
  CHECK(verify_g_map(s.complex, s.group).empty());
  for (int i = 0; i < 5; ++i) {
    const std::string lo = "v" + std::to_string(i), hi = "v" + std::to_string(i + 1);
    const Chain& b = s.complex.boundary(Cell{1, lo + "|" + hi});
    CHECK(b.coefficient(hi) == Scalar(Z, 1L));
    CHECK(b.coefficient(lo) == Scalar(Z, -1L));
  }
  const Chain& wrap = s.complex.boundary(Cell{1, "v0|v5"});
  CHECK(wrap.coefficient("v0") == Scalar(Z, 1L));
  CHECK(wrap.coefficient("v5") == Scalar(Z, -1L));
  CHECK(homology(s.complex).degrees.at(1).betti == 1);
}

TEST_CASE("hexagon reflection needs characteristic two") {
  // v_i -> v_{1-i} reverses the edge v0|v1
  CHECK(ingest_simplicial(hexagon_input(false)).group.order() == 6);
  CHECK(kind_of([] { ingest_simplicial(hexagon_input(true)); }) == ErrorKind::orientation_reversing_action);
  SimplicialInput in = hexagon_input(true);
  in.ring = RingSpec::modular(2);
  SimplicialComplex s = ingest_simplicial(in);
  CHECK(s.group.order() == 2);
  CHECK(verify_g_map(s.complex, s.group).empty());
}

TEST_CASE("ingest rejects bad input") {
  SimplicialInput swap{{"a", "b", "c"}, {{"a", "b"}, {"c"}}, {{"g", {{"a", "c"}, {"c", "a"}}}}, Z};
  CHECK(kind_of([&] { ingest_simplicial(swap); }) == ErrorKind::non_simplicial_generator);
  SimplicialInput collapse{{"a", "b"}, {{"a", "b"}}, {{"g", {{"a", "b"}}}}, Z};
  CHECK(kind_of([&] { ingest_simplicial(collapse); }) == ErrorKind::non_simplicial_generator);
  SimplicialInput unknown{{"a", "b"}, {{"a", "b"}}, {{"g", {{"a", "z"}, {"z", "a"}}}}, Z};
  CHECK(kind_of([&] { ingest_simplicial(unknown); }) == ErrorKind::non_simplicial_generator);
  SimplicialInput stray{{"a"}, {{"a", "q"}}, {}, Z};
  CHECK(kind_of([&] { ingest_simplicial(stray); }) == ErrorKind::contract_violation);
}

TEST_CASE("json round trips") {
  for (const auto& inst : corpus::standard_instances()) {
    const ChainComplex& c = inst.complex;
    CHECK(io::complex_from_json(io::parse(io::dump(io::to_json(c)))) == c);
    CHECK(io::matching_from_json(io::to_json(inst.matching, c), c) == inst.matching);
    HomologyProfile h = homology(c);
    CHECK(io::homology_from_json(io::to_json(h)) == h);

    ReductionResult r = reduce(c, inst.group, inst.matching);
    const RingSpec& ring = c.ring();
    CHECK(io::pieces_from_json(io::to_json(r.pieces, ring)) == r.pieces);
    CHECK(io::graded_map_from_json(io::to_json(*r.iso, ring)) == *r.iso);
    auto steps = io::steps_from_json(io::to_json(r.steps, ring));
    REQUIRE(steps.size() == r.steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      CHECK(steps[i].residual == r.steps[i].residual);
      CHECK(steps[i].piece == r.steps[i].piece);
      CHECK(steps[i].induced_matching == r.steps[i].induced_matching);
      CHECK(steps[i].eliminated_orbit == r.steps[i].eliminated_orbit);
    }
    ReductionResult back = io::reduction_from_json(io::parse(io::dump(io::to_json(r))));
    CHECK(back.morse_complex == r.morse_complex);
    CHECK(back.input == r.input);
    CHECK(io::to_json(back) == io::to_json(r));
  }
  ChainComplex hex = corpus::hexagon();
  std::vector<Permutation> gens{corpus::hexagon_rotation(1)};
  CHECK(io::to_json(io::generators_from_json(io::to_json(gens))) == io::to_json(gens));
  SimplicialInput rp2 = corpus::rp2_input();
  CHECK(io::simplicial_from_json(io::to_json(rp2)) == rp2);
}

TEST_CASE("format field") {
  io::Json j = io::to_json(corpus::point());
  CHECK(j["format"] == 1);
  j.erase("format");
  CHECK(io::complex_from_json(j) == corpus::point());
  j["format"] = 2;
  CHECK_THROWS_AS(io::complex_from_json(j), Error);
  CHECK_FALSE(io::to_json(homology(corpus::point())).contains("format"));
  CHECK(io::to_json(homology(corpus::point())).dump() == R"({"0":{"betti":1,"torsion":[]}})");
}

TEST_CASE("parse errors carry line and column") {
  try {
    io::parse("{\n  \"a\": [1,\n  2,]\n}", "x.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
    const std::string what = e.what();
    CHECK(what.find("x.json: line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
  CHECK(kind_of([] { io::read_file("/nonexistent/file.json"); }) != ErrorKind::internal_invariant);
}

TEST_CASE("matching degrees are inferred") {
  // labels shared between degrees 0 and 1 make the pair ambiguous
  ChainComplex c = corpus::make_complex(Z, {{0, {"a", "b"}}, {1, {"a", "b"}}, {2, {"b"}}}, {});
  io::Json ambiguous = {{"format", 1}, {"pairs", io::Json::array({io::Json::array({"a", "b"})})}};
  CHECK(kind_of([&] { io::matching_from_json(ambiguous, c); }) == ErrorKind::contract_violation);
  io::Json unknown = {{"format", 1}, {"pairs", io::Json::array({io::Json::array({"zz", "b"})})}};
  CHECK(kind_of([&] { io::matching_from_json(unknown, c); }) == ErrorKind::unknown_basis_element);

  ChainComplex path = corpus::path();
  Matching m = io::matching_from_json(io::Json{{"pairs", io::Json::array({io::Json::array({"v1", "e"})})}}, path);
  CHECK(m.contains(Cell{0, "v1"}, Cell{1, "e"}));
}
