#pragma once

#include <string>
#include <string_view>

#include "poracle/frame.hpp"

namespace poracle {

/// Line-oriented program text:
///
///     # comment
///     reg a 4
///     d += b
///     d += 0x8
///     d += maj(a, b, c)
///     d += ch(a, b, c)
///     d += shift((0,1,3)(), a)
///     W0 <<~ (0,1)(3)
///
/// Registers must be declared before use. Returns a sealed tape.
/// Throws ParseError carrying the 1-based line number.
ProgramTape parse_tape(std::string_view text);

/// Inverse of parse_tape.
std::string format_tape(const ProgramTape& tape);

} // namespace poracle
