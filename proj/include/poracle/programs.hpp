#pragma once

#include <array>
#include <cstdint>

#include "poracle/frame.hpp"

namespace poracle {

/// SHA-256 round constants K_0..K_63.
extern const std::array<std::uint32_t, 64> sha256_round_constants;

/// x, y of width w; y += x; y := sigma_(0,1,3)()(y).
ProgramTape chain_program(unsigned width);

/// Scaled-down SHA-256 compression on registers a, b, c, d, W0 of width w
/// (2..4). Each round adds Sigma(a), Ch(a,b,c), K_t and W0 into d, adds d into
/// b, adds Maj(a,b,c) into d and shifts W0 in place; the register roles then
/// rotate by one. Sigma = (0,1,3)(), sigma = (0,1)(s) with s = min(3, w-1).
ProgramTape toy_hash_program(unsigned width, unsigned rounds = 4);

ShiftType toy_hash_big_sigma(unsigned width);
ShiftType toy_hash_small_sigma(unsigned width);

} // namespace poracle
