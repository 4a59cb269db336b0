#pragma once

#include <string>
#include <string_view>

#include "gybe/complex_matrix.hpp"

namespace gybe {

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);
/// "<re>,<im>"
std::string format_complex(Complex z);

/// Whole-string decimal parse; throws ParseError.
double parse_real(std::string_view text);
/// Parses "<re>,<im>"; throws ParseError.
Complex parse_complex(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace gybe
