#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqmorse {

enum class ErrorKind {
  ring_mismatch,
  contract_violation,
  singular_basis_change,
  not_closed_under_boundary,
  closure_overflow,
  generator_not_bijective,
  unknown_basis_element,
  acyclicity_failure,
  weight_not_invertible,
  internal_invariant,
  unsupported_coefficients,
  orientation_reversing_action,
  non_simplicial_generator,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto a structured diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eqmorse
