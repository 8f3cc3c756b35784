#pragma once

#include <span>
#include <string>
#include <string_view>

#include "nij/polynomial.hpp"
#include "nij/scalar_field.hpp"

namespace nij {

/// Parses the textual coefficient syntax used in input documents.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := power (('*'|'/') power)*
///   power   := primary ['^' integer]
///   primary := integer | name | '(' expr ')'
///
/// Names must be coordinates of the chart. Juxtaposition ("2x1") is
/// rejected. "3/2*x1" reads as (3/2)*x1. Throws InputError with the offset
/// of the first problem.
ScalarField parse_scalar(std::string_view text, std::span<const std::string> coords);

/// Same grammar, but the result must be a polynomial.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> coords);

}  // namespace nij
