#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wlab/config.hpp"

namespace wlab {

// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" with decimal or exponent
// literals; no whitespace. Throws InvalidInput.
cplx parse_complex(std::string_view text);

// Comma separated list of complex literals.
std::vector<cplx> parse_complex_list(std::string_view text);

double parse_real(std::string_view text);

// Round-trippable "a+bi" text.
std::string format_complex(cplx z);

}  // namespace wlab
