#pragma once

// Recursive-descent parser for the polynomial input language:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := ('-' | '+') factor | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | variable | 'g' | '(' expr ')'
//
// Variables are the ring's names (x, y, z, w by default) or x1..xN.
// `g` is the generator of F_{p^m}.

#include <string>
#include <string_view>
#include <vector>

#include "isojet/trunc.hpp"

namespace isojet {

/// Terms above beta raise DegreeExceedsBeta unless `truncate` is set.
TruncPoly parse_poly(std::string_view text, const RingSpec& spec, bool truncate = false);

/// Comma-separated polynomials.
std::vector<TruncPoly> parse_poly_list(std::string_view text, const RingSpec& spec, bool truncate = false);

/// Comma-separated scalars, e.g. `0,0,1`.
Vector parse_point(std::string_view text, const FieldSpec& field);

/// Rows separated by ';', entries by ','.
std::vector<std::vector<std::string>> split_matrix(std::string_view text);

std::vector<std::string> split_list(std::string_view text, char sep);

std::string point_to_string(const Vector& point);

}  // namespace isojet
