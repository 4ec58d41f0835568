#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "poracle/algo.hpp"
#include "poracle/frame.hpp"

namespace poracle {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
    double max_deviation() const;
};

/// gates, chain-rule, gf2, conventions, sequential
const std::vector<std::string>& suite_names();

/// Deterministic for a given seed. Throws ValidationError for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

/// The tape's classical function on the flat index (registers in declaration
/// order, each little endian). At most 12 index bits.
BijectionTable tape_bijection(const ProgramTape& tape);

/// Data-wire unitary of the emitted reciprocal circuit: index wires as data,
/// carry taken |0> -> |+>, phase ancilla |0> -> |->, scratch |0> -> |0>.
DataWireUnitary tape_recip_unitary(const ProgramTape& tape);

/// Data-wire unitary of the emitted direct circuit (target 0), all ancillas |0>.
DataWireUnitary tape_direct_unitary(const ProgramTape& tape);

/// Every invertible shift type on w bits with rotate amounts drawn from
/// 0..w-1 (no repeats) and at most `max_shr` shift amounts.
std::vector<ShiftType> invertible_shift_types(unsigned width, unsigned max_shr = 1);

} // namespace poracle
