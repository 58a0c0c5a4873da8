#include <doctest.h>

#include <random>

#include "eqmorse/coefficients.hpp"
#include "eqmorse/error.hpp"

using namespace eqmorse;

namespace {
const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();
}  // namespace

TEST_CASE("ring arithmetic examples") {
  CHECK(Scalar(Z, 2L) + Scalar(Z, 3L) == Scalar(Z, 5L));
  const RingSpec F5 = RingSpec::modular(5);
  CHECK(Scalar(F5, 2L) * Scalar(F5, 3L) == Scalar(F5, 1L));
  CHECK((Scalar(Q, mpq_class(1, 2)) + Scalar(Q, mpq_class(1, 3))).to_string() == "5/6");
}

TEST_CASE("try_invert examples") {
  CHECK(*try_invert(Scalar(Z, -1L)) == Scalar(Z, -1L));
  CHECK_FALSE(try_invert(Scalar(Z, 2L)).has_value());
  const RingSpec Z6 = RingSpec::modular(6);
  CHECK_FALSE(try_invert(Scalar(Z6, 2L)).has_value());
  CHECK(*try_invert(Scalar(Z6, 5L)) == Scalar(Z6, 5L));
  CHECK_FALSE(try_invert(Scalar(Q, 0L)).has_value());
  CHECK(*try_invert(Scalar(Q, mpq_class(-2, 3))) == Scalar(Q, mpq_class(-3, 2)));
}

TEST_CASE("units mod m are exactly the invertible residues, m <= 12") {
  for (long m = 2; m <= 12; ++m) {
    const RingSpec R = RingSpec::modular(m);
    for (long x = 0; x < m; ++x) {
      bool unit = false;
      for (long y = 0; y < m; ++y) unit |= (x * y) % m == 1 % m;
      auto inv = try_invert(Scalar(R, x));
      CHECK(inv.has_value() == unit);
      if (inv) CHECK((*inv * Scalar(R, x)).is_one());
    }
  }
}

TEST_CASE("random rationals invert") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    long num = static_cast<long>(rng() % 2001) - 1000;
    long den = 1 + static_cast<long>(rng() % 500);
    Scalar x(Q, mpq_class(num, den));
    auto inv = try_invert(x);
    CHECK(inv.has_value() == !x.is_zero());
    if (inv) CHECK((x * *inv).is_one());
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(11);
  auto draw = [&](const RingSpec& r) {
    long a = static_cast<long>(rng() % 61) - 30;
    if (r.kind() == RingKind::rationals) return Scalar(r, mpq_class(a, 1 + static_cast<long>(rng() % 9)));
    return Scalar(r, a);
  };
  for (const RingSpec& r : {Z, Q, RingSpec::modular(7), RingSpec::modular(12)}) {
    for (int i = 0; i < 100; ++i) {
      Scalar a = draw(r), b = draw(r), c = draw(r);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == Scalar(r));
    }
  }
}

TEST_CASE("normal forms and parsing") {
  const RingSpec Z7 = RingSpec::modular(7);
  CHECK(Scalar(Z7, 11L).to_string() == "4");
  CHECK(Scalar(Z7, -3L).to_string() == "4");
  CHECK(Scalar(Z7, mpq_class(1, 2)).to_string() == "4");
  CHECK(Scalar::parse(Q, "-10/4").to_string() == "-5/2");
  CHECK(Scalar::parse(Z, "-3") == Scalar(Z, -3L));
  CHECK_THROWS_AS(Scalar::parse(Z, "1/2"), Error);
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse(Q, "abc"), Error);
  CHECK(RingSpec::parse("mod:7") == Z7);
  CHECK(RingSpec::parse("int") == Z);
  CHECK(RingSpec::parse("rat") == Q);
  CHECK_THROWS_AS(RingSpec::parse("mod:1"), Error);
  CHECK(Z7.is_field());
  CHECK_FALSE(RingSpec::modular(6).is_field());
  CHECK_FALSE(Z.is_field());
}

TEST_CASE("mixing rings is an error") {
  try {
    (void)(Scalar(Z, 1L) + Scalar(Q, 1L));
    FAIL("expected ring mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ring_mismatch);
  }
}
