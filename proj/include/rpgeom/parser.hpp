#pragma once

#include <string_view>

#include "rpgeom/scalar_field.hpp"

namespace rpgeom {

/// Parses an arithmetic expression over the chart's coordinates.
///
/// Grammar: integer literals, identifiers, binary + - * /, unary -, ^ with a
/// nonnegative integer exponent, parentheses. Precedence is ^ (right
/// associative) above unary minus above * / above + - (left associative).
/// Throws SyntaxError with the failing offset, or Error(UnknownIdentifier).
ScalarField parse_scalar(std::string_view text, const ChartPtr& chart);

/// Parses an exact rational literal such as "3", "-2", "3/4".
Rational parse_rational(std::string_view text);

}  // namespace rpgeom
