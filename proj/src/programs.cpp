#include "poracle/programs.hpp"

#include <algorithm>

#include "poracle/errors.hpp"

namespace poracle {

const std::array<std::uint32_t, 64> sha256_round_constants = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

ProgramTape chain_program(unsigned width) {
    ProgramTape tape;
    const RegId x = tape.add_register("x", width);
    const RegId y = tape.add_register("y", width);
    tape.add(y, x);
    tape.shift_inline(ShiftType(width, {0, 1, 3}), y);
    tape.seal();
    return tape;
}

ShiftType toy_hash_big_sigma(unsigned width) { return ShiftType(width, {0, 1, 3}); }

ShiftType toy_hash_small_sigma(unsigned width) {
    if (width < 2) throw ValidationError("toy hash needs width >= 2");
    return ShiftType(width, {0, 1}, {static_cast<int>(std::min(3U, width - 1))});
}

ProgramTape toy_hash_program(unsigned width, unsigned rounds) {
    if (width < 2 || width > 4) throw ValidationError("toy hash width must be in 2..4");
    if (rounds > sha256_round_constants.size()) throw ValidationError("toy hash supports at most 64 rounds");
    ProgramTape tape;
    std::array<RegId, 4> abcd = {tape.add_register("a", width), tape.add_register("b", width),
                                 tape.add_register("c", width), tape.add_register("d", width)};
    const RegId w0 = tape.add_register("W0", width);
    const ShiftType big_sigma = toy_hash_big_sigma(width);
    const ShiftType small_sigma = toy_hash_small_sigma(width);

    std::size_t ai = 0, bi = 1, ci = 2, di = 3;
    for (unsigned t = 0; t < rounds; ++t) {
        const RegId a = abcd[ai], b = abcd[bi], c = abcd[ci], d = abcd[di];
        tape.add_shift(d, big_sigma, a);
        tape.add_ch(d, a, b, c);
        tape.add_const(d, sha256_round_constants[t] & word_mask(width));
        tape.add(d, w0);
        tape.add(b, d);
        tape.add_maj(d, a, b, c);
        tape.shift_inline(small_sigma, w0);
        ai = (ai + 3) % 4;
        bi = (bi + 3) % 4;
        ci = (ci + 3) % 4;
        di = (di + 3) % 4;
    }
    tape.seal();
    return tape;
}

} // namespace poracle
