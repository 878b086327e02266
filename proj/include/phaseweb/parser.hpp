#pragma once

#include <optional>
#include <string_view>

#include "phaseweb/multivector.hpp"

namespace pw {

// Parses the algebra expression grammar:
//
//   expr   := term ('+' term)*
//   term   := factor (('*')? factor)*        juxtaposition = product
//   factor := atom | '(' expr ')'
//   atom   := 's' digits | '~s' digits | '0' | '1' | '2' | '-1'
//
// '~s1' is coefficient 2 on s1; juxtaposition binds tighter than '+';
// whitespace is insignificant. Products are evaluated with a uniform
// signature of the given sign. The universe defaults to the largest
// sensor index in the text; an explicit universe must cover it.
//
// Throws ParseError (with 1-based line/column) on bad syntax and Error on
// a sensor index of 0 or an oversized universe.
Multivector parse_expression(std::string_view text, int sig_sign = +1,
                             std::optional<int> universe = std::nullopt);

}  // namespace pw
