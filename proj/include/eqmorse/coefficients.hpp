#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eqmorse {

enum class RingKind { integers, rationals, modular };

/// One of the supported coefficient rings: ℤ, ℚ or ℤ/m with m ≥ 2.
class RingSpec {
 public:
  static RingSpec integers() { return RingSpec(RingKind::integers, 0); }
  static RingSpec rationals() { return RingSpec(RingKind::rationals, 0); }
  static RingSpec modular(std::int64_t modulus);

  /// Accepts "int", "rat" and "mod:<m>".
  static RingSpec parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  /// True for ℚ and for ℤ/p with p prime.
  bool is_field() const;

  std::string name() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(RingKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::int64_t modulus_;
};

/// An exact ring element. Rationals stay in lowest terms with a positive
/// denominator; residues mod m stay in [0, m). Integers are rationals with
/// denominator one.
class Scalar {
 public:
  explicit Scalar(RingSpec ring);
  Scalar(RingSpec ring, long value);
  Scalar(RingSpec ring, const mpz_class& value);
  Scalar(RingSpec ring, const mpq_class& value);

  /// Parses "-3", "5/6" or "4"; the ring decides which forms are legal.
  static Scalar parse(RingSpec ring, std::string_view text);

  const RingSpec& ring() const noexcept { return ring_; }
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  /// Integer representative; only valid over ℤ and ℤ/m.
  mpz_class integer() const;

  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

 private:
  void check_same_ring(const Scalar& other) const;
  void normalize();

  RingSpec ring_;
  mpq_class value_;
};

/// Returns the inverse when x is a unit of its ring.
std::optional<Scalar> try_invert(const Scalar& x);

}  // namespace eqmorse
