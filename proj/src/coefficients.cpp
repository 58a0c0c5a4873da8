#include "eqmorse/coefficients.hpp"

#include <charconv>

#include "eqmorse/error.hpp"

namespace eqmorse {

namespace {

bool valid_number_text(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = text[0] == '-' ? 1 : 0;
  bool seen_digit = false;
  bool seen_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
    } else if (c == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
      seen_digit = false;
    } else {
      return false;
    }
  }
  return seen_digit;
}

}  // namespace

RingSpec RingSpec::modular(std::int64_t modulus) {
  if (modulus < 2) {
    throw Error(ErrorKind::contract_violation,
                "modulus must be at least 2, got " + std::to_string(modulus));
  }
  return RingSpec(RingKind::modular, modulus);
}

RingSpec RingSpec::parse(std::string_view text) {
  if (text == "int") return integers();
  if (text == "rat") return rationals();
  if (text.starts_with("mod:")) {
    auto digits = text.substr(4);
    std::int64_t m = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return modular(m);
    }
  }
  throw Error(ErrorKind::parse_error,
              "unknown ring '" + std::string(text) + "' (expected int, rat or mod:<m>)");
}

bool RingSpec::is_field() const {
  switch (kind_) {
    case RingKind::integers: return false;
    case RingKind::rationals: return true;
    case RingKind::modular: {
      mpz_class m(static_cast<long>(modulus_));
      return mpz_probab_prime_p(m.get_mpz_t(), 40) > 0;
    }
  }
  return false;
}

std::string RingSpec::name() const {
  switch (kind_) {
    case RingKind::integers: return "int";
    case RingKind::rationals: return "rat";
    case RingKind::modular: return "mod:" + std::to_string(modulus_);
  }
  return "?";
}

Scalar::Scalar(RingSpec ring) : ring_(ring), value_(0) {}

Scalar::Scalar(RingSpec ring, long value) : ring_(ring), value_(value) { normalize(); }

Scalar::Scalar(RingSpec ring, const mpz_class& value) : ring_(ring), value_(value) {
  normalize();
}

Scalar::Scalar(RingSpec ring, const mpq_class& value) : ring_(ring), value_(value) {
  value_.canonicalize();
  normalize();
}

Scalar Scalar::parse(RingSpec ring, std::string_view text) {
  if (!valid_number_text(text)) {
    throw Error(ErrorKind::parse_error, "malformed scalar '" + std::string(text) + "'");
  }
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::parse_error, "malformed scalar '" + std::string(text) + "'");
  }
  q.canonicalize();
  return Scalar(ring, q);
}

void Scalar::normalize() {
  switch (ring_.kind()) {
    case RingKind::rationals:
      return;
    case RingKind::integers:
      if (value_.get_den() != 1) {
        throw Error(ErrorKind::contract_violation,
                    "non-integral value " + value_.get_str() + " over int");
      }
      return;
    case RingKind::modular: {
      mpz_class m(static_cast<long>(ring_.modulus()));
      mpz_class num = value_.get_num();
      if (value_.get_den() != 1) {
        mpz_class inv;
        mpz_class den = value_.get_den();
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
          throw Error(ErrorKind::contract_violation,
                      "denominator of " + value_.get_str() + " is not a unit mod " +
                          std::to_string(ring_.modulus()));
        }
        num *= inv;
      }
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
      value_ = r;
      return;
    }
  }
}

void Scalar::check_same_ring(const Scalar& other) const {
  if (!(ring_ == other.ring_)) {
    throw Error(ErrorKind::ring_mismatch,
                "operands live in " + ring_.name() + " and " + other.ring_.name());
  }
}

mpz_class Scalar::integer() const {
  if (ring_.kind() == RingKind::rationals && value_.get_den() != 1) {
    throw Error(ErrorKind::contract_violation, "not an integer: " + value_.get_str());
  }
  return value_.get_num();
}

std::string Scalar::to_string() const { return value_.get_str(); }

Scalar Scalar::operator-() const {
  Scalar out(*this);
  out.value_ = -out.value_;
  out.normalize();
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_ring(other);
  value_ += other.value_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_ring(other);
  value_ -= other.value_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_ring(other);
  value_ *= other.value_;
  normalize();
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  return lhs.ring_ == rhs.ring_ && lhs.value_ == rhs.value_;
}

std::optional<Scalar> try_invert(const Scalar& x) {
  switch (x.ring().kind()) {
    case RingKind::integers:
      if (x.value() == 1 || x.value() == -1) return x;
      return std::nullopt;
    case RingKind::rationals:
      if (x.is_zero()) return std::nullopt;
      return Scalar(x.ring(), mpq_class(1) / x.value());
    case RingKind::modular: {
      mpz_class m(static_cast<long>(x.ring().modulus()));
      mpz_class a = x.value().get_num();
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
      return Scalar(x.ring(), inv);
    }
  }
  return std::nullopt;
}

}  // namespace eqmorse
