#pragma once

#include <string>
#include <string_view>

#include "poracle/circuit.hpp"

namespace poracle {

/// Line-oriented circuit text:
///
///     PORACLE-CIRCUIT 1
///     qubits <n>
///     reg <name> <role> <q>...
///     <kind> <targets>... | <controls>...
///     # barrier
///
/// Output is deterministic; parse_portable(export_portable(c)) == c.
std::string export_portable(const Circuit& circuit);

/// Throws ParseError carrying the 1-based line number.
Circuit parse_portable(std::string_view text);

} // namespace poracle
