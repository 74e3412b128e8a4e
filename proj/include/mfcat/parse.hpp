#pragma once

#include "mfcat/poly.hpp"

#include <stdexcept>
#include <string>

namespace mfcat {

/// Parse error with 1-based position into the input text.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

/// Grammar: +, -, *, ^, parentheses, integer and a/b rational literals,
/// the literal `i`, and the ring's variable names (names may contain ').
Poly parse_poly(const std::string& text, const RingPtr& ring);

} // namespace mfcat
