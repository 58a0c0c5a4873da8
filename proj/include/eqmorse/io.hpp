#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eqmorse/action.hpp"
#include "eqmorse/complex.hpp"
#include "eqmorse/homology.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/reduce.hpp"
#include "eqmorse/simplicial.hpp"

namespace eqmorse::io {

using Json = nlohmann::json;

inline constexpr int format_version = 1;

/// Parses JSON text; syntax errors become parse_error with line and column.
Json parse(const std::string& text, const std::string& source = "<input>");
Json read_file(const std::string& path);

/// Pretty-printed, keys sorted, trailing newline.
std::string dump(const Json& value);

Json to_json(const ChainComplex& complex);
ChainComplex complex_from_json(const Json& value);

Json to_json(const std::vector<Permutation>& generators);
std::vector<Permutation> generators_from_json(const Json& value);

/// Pairs are written as [lower, upper]; a third entry with the lower degree
/// is added only when the labels alone are ambiguous in the complex.
Json to_json(const Matching& matching, const ChainComplex& complex);
Matching matching_from_json(const Json& value, const ChainComplex& complex);

Json to_json(const HomologyProfile& profile);
HomologyProfile homology_from_json(const Json& value);

Json to_json(const ValidationReport& report);

Json to_json(const GradedMap& map, const RingSpec& ring);
GradedMap graded_map_from_json(const Json& value);

Json to_json(const std::vector<AcyclicPiece>& pieces, const RingSpec& ring);
std::vector<AcyclicPiece> pieces_from_json(const Json& value);

Json to_json(const std::vector<ReductionStep>& steps, const RingSpec& ring);
std::vector<ReductionStep> steps_from_json(const Json& value);

/// Everything in a reduction: input, morse_complex, pieces, iso and steps.
Json to_json(const ReductionResult& result);
ReductionResult reduction_from_json(const Json& value);

Json to_json(const SimplicialInput& input);
SimplicialInput simplicial_from_json(const Json& value);

}  // namespace eqmorse::io
