// Deterministic LaTeX form for graded polynomials (canonical term order:
// weight, then degree, then lexicographic) and a parser for exactly that
// grammar, so emitted text can be frozen as golden files and round-tripped.
#pragma once

#include <string>

#include "eckhaus/graded_poly.hpp"

namespace eckhaus::cas {

std::string emit_latex(const GradedPoly& p);
GradedPoly parse_latex(const std::string& text);  // throws ConfigError on bad input

}  // namespace eckhaus::cas
