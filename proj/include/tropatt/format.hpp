#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tropatt {

// Shortest decimal rendering that parses back to the identical bits
// (at most 17 significant digits). Infinities render as "inf"/"-inf".
std::string format_double(double value);

// Strict full-string parse of a decimal literal; nullopt when the text is
// not one. Accepts the forms format_double emits.
std::optional<double> parse_double(std::string_view text);

}  // namespace tropatt
