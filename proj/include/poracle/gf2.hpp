#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poracle {

/// Generalized shift mu = (rotr...)(shr...) on w-bit words: the XOR of
/// ROTR^a for every rotate amount and SHR^c for every shift amount.
/// Negative amounts rotate/shift the other way.
struct ShiftType {
    unsigned width = 1;
    std::vector<int> rotr;
    std::vector<int> shr;

    /// Throws ValidationError unless 1 <= width <= 64 and every shr amount
    /// satisfies -w < c < w, c != 0.
    ShiftType(unsigned width, std::vector<int> rotr, std::vector<int> shr = {});

    /// Parses the literal form "(0,1)(3)" or "(0,1,3)()". Throws ValidationError.
    static ShiftType parse(std::string_view text, unsigned width);
    std::string to_string() const;

    bool operator==(const ShiftType&) const = default;
};

std::uint64_t word_mask(unsigned width);

std::uint64_t shift_apply(const ShiftType& mu, std::uint64_t x);

/// Negates every rotate and shift amount.
ShiftType complement(const ShiftType& mu);

/// Square bit matrix over GF(2). Row i is bit-packed: bit j of rows[i] is M_ij,
/// so output bit i of M*x is the parity of rows[i] & x.
class GF2Matrix {
public:
    explicit GF2Matrix(unsigned width);
    static GF2Matrix identity(unsigned width);
    /// Matrix whose column j is `columns[j]`.
    static GF2Matrix from_columns(const std::vector<std::uint64_t>& columns);

    unsigned width() const noexcept { return width_; }
    bool bit(unsigned row, unsigned col) const { return (rows_.at(row) >> col) & 1U; }
    void set(unsigned row, unsigned col, bool value);
    std::uint64_t row(unsigned i) const { return rows_.at(i); }
    std::uint64_t column(unsigned j) const;

    std::uint64_t apply(std::uint64_t x) const;
    GF2Matrix operator*(const GF2Matrix& rhs) const;
    GF2Matrix transpose() const;

    bool operator==(const GF2Matrix&) const = default;

private:
    unsigned width_;
    std::vector<std::uint64_t> rows_;
};

/// Column j is shift_apply(mu, 2^j).
GF2Matrix matrix_of(const ShiftType& mu);

/// Gauss-Jordan elimination; nullopt when the matrix is singular.
std::optional<GF2Matrix> invert(const GF2Matrix& m);

/// Bits of `value` most-significant first, e.g. 7 at width 4 is "0111".
std::string to_bit_string(std::uint64_t value, unsigned width);

} // namespace poracle
