#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/homology.hpp"
#include "eqmorse/simplicial.hpp"

using namespace eqmorse;

namespace {
IntMatrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (const auto& row : rows) {
    m.emplace_back();
    for (long x : row) m.back().emplace_back(x);
  }
  return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  IntMatrix m(r, std::vector<mpz_class>(c));
  for (auto& row : m) {
    for (auto& x : row) x = static_cast<long>(rng() % 9) - 4;
  }
  return m;
}

bool unit_det(const IntMatrix& m) {
  mpz_class d = determinant(m);
  return d == 1 || d == -1;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::internal_invariant;
}
}  // namespace

TEST_CASE("smith normal form examples") {
  SmithForm id = smith_normal_form(ints({{1, 0}, {0, 1}}));
  CHECK(id.diagonal == ints({{1, 0}, {0, 1}}));
  SmithForm d = smith_normal_form(ints({{2, 0}, {0, 3}}));
  CHECK(d.diagonal == ints({{1, 0}, {0, 6}}));
  CHECK(d.invariant_factors() == std::vector<mpz_class>{1, 6});
  SmithForm z = smith_normal_form(ints({{0, 0, 0}, {0, 0, 0}}));
  CHECK(z.invariant_factors().empty());
  SmithForm e = smith_normal_form(IntMatrix{});
  CHECK(e.invariant_factors().empty());
}

TEST_CASE("determinant examples") {
  CHECK(determinant(ints({{2, 0}, {0, 3}})) == 6);
  CHECK(determinant(ints({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(ints({{1, 2}, {2, 4}})) == 0);
  CHECK(determinant(IntMatrix{}) == 1);
}

TEST_CASE("random smith forms are unimodular and divisible") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 120; ++k) {
    const std::size_t r = 1 + rng() % 12;
    const std::size_t c = 1 + rng() % 12;
    IntMatrix a = random_matrix(rng, r, c);
    SmithForm s = smith_normal_form(a);
    CHECK(multiply(multiply(s.row_ops, a), s.col_ops) == s.diagonal);
    CHECK(unit_det(s.row_ops));
    CHECK(unit_det(s.col_ops));
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(f[i] > 0);
      if (i + 1 < f.size()) CHECK(f[i + 1] % f[i] == 0);
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (i != j) CHECK(s.diagonal[i][j] == 0);
      }
    }
  }
}

TEST_CASE("homology examples") {
  HomologyProfile point = homology(corpus::point());
  CHECK(point.degrees.size() == 1);
  CHECK(point.degrees.at(0) == DegreeHomology{1, {}});

  HomologyProfile hex = homology(corpus::hexagon());
  CHECK(hex.degrees.at(0).betti == 1);
  CHECK(hex.degrees.at(1).betti == 1);

  CHECK(homology(corpus::full_simplex()).degrees.at(2).betti == 0);
  CHECK(homology(corpus::full_simplex()).degrees.at(0).betti == 1);

  ChainComplex rp2 = ingest_simplicial(corpus::rp2_input()).complex;
  HomologyProfile h = homology(rp2);
  CHECK(h.degrees.at(0) == DegreeHomology{1, {}});
  CHECK(h.degrees.at(1) == DegreeHomology{0, {2}});
  CHECK(h.degrees.at(2) == DegreeHomology{0, {}});
  HomologyProfile h2 = homology(ingest_simplicial(corpus::rp2_input(RingSpec::modular(2))).complex);
  CHECK(h2.degrees.at(1).betti == 1);
  CHECK(h2.degrees.at(2).betti == 1);
  HomologyProfile hq = homology(ingest_simplicial(corpus::rp2_input(RingSpec::rationals())).complex);
  CHECK(hq.degrees.at(1).betti == 0);

  ChainComplex torus = ingest_simplicial(corpus::torus_input()).complex;
  HomologyProfile t = homology(torus);
  CHECK(t.degrees.at(1) == DegreeHomology{2, {}});
  CHECK(t.degrees.at(2) == DegreeHomology{1, {}});

  // two copies of ℤ --2--> ℤ
  ChainComplex two = corpus::make_complex(RingSpec::integers(), {{0, {"v"}}, {1, {"e"}}}, {{"e", {{"v", 2}}}});
  CHECK(homology(two).degrees.at(0) == DegreeHomology{0, {2}});
  CHECK(homology(change_ring(two, RingSpec::modular(3))).degrees.at(0).betti == 0);
  CHECK(homology(change_ring(two, RingSpec::modular(2))).degrees.at(0).betti == 1);
}

TEST_CASE("composite moduli are refused") {
  ChainComplex c = change_ring(corpus::path(), RingSpec::modular(6));
  CHECK(kind_of([&] { homology(c); }) == ErrorKind::unsupported_coefficients);
}

TEST_CASE("compare examples") {
  CHECK(compare(corpus::hexagon(), corpus::hexagon()).equal);
  HomologyComparison d = compare(corpus::hexagon(), corpus::point());
  CHECK_FALSE(d.equal);
  CHECK(d.first_difference == 1);
  CHECK_FALSE(d.detail.empty());
  CHECK(compare(corpus::path(), corpus::point()).equal);
  ChainComplex q = change_ring(corpus::point(), RingSpec::rationals());
  CHECK(kind_of([&] { compare(q, corpus::point()); }) == ErrorKind::ring_mismatch);
}
