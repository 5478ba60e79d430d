#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace plateaulab {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace plateaulab
