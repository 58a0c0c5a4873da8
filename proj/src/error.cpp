#include "eqmorse/error.hpp"

namespace eqmorse {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ring_mismatch: return "ring-mismatch";
    case ErrorKind::contract_violation: return "contract-violation";
    case ErrorKind::singular_basis_change: return "singular-basis-change";
    case ErrorKind::not_closed_under_boundary: return "not-closed-under-boundary";
    case ErrorKind::closure_overflow: return "closure-overflow";
    case ErrorKind::generator_not_bijective: return "generator-not-bijective";
    case ErrorKind::unknown_basis_element: return "unknown-basis-element";
    case ErrorKind::acyclicity_failure: return "acyclicity-failure";
    case ErrorKind::weight_not_invertible: return "weight-not-invertible";
    case ErrorKind::internal_invariant: return "internal-invariant";
    case ErrorKind::unsupported_coefficients: return "unsupported-coefficients";
    case ErrorKind::orientation_reversing_action: return "orientation-reversing-action";
    case ErrorKind::non_simplicial_generator: return "non-simplicial-generator";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace eqmorse
