#include "poracle/gf2.hpp"

#include <bit>
#include <cctype>
#include <charconv>

#include "poracle/errors.hpp"

namespace poracle {

namespace {

unsigned positive_mod(long long value, unsigned modulus) {
    const long long m = static_cast<long long>(modulus);
    return static_cast<unsigned>(((value % m) + m) % m);
}

std::vector<int> parse_amounts(std::string_view body, std::string_view whole) {
    std::vector<int> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    };
    skip_ws();
    if (i == body.size()) return out;
    while (true) {
        skip_ws();
        std::size_t start = i;
        if (i < body.size() && (body[i] == '-' || body[i] == '+')) ++i;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
        std::string_view tok = body.substr(start, i - start);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ValidationError("malformed shift type '" + std::string(whole) + "'");
        out.push_back(v);
        skip_ws();
        if (i == body.size()) break;
        if (body[i] != ',') throw ValidationError("malformed shift type '" + std::string(whole) + "'");
        ++i;
    }
    return out;
}

} // namespace

ShiftType::ShiftType(unsigned width_, std::vector<int> rotr_, std::vector<int> shr_)
    : width(width_), rotr(std::move(rotr_)), shr(std::move(shr_)) {
    if (width < 1 || width > 64) throw ValidationError("shift width must be in 1..64");
    const int w = static_cast<int>(width);
    for (int c : shr)
        if (c == 0 || c <= -w || c >= w)
            throw ValidationError("shr amount " + std::to_string(c) + " outside (-" + std::to_string(w) + ", " +
                                  std::to_string(w) + ") \\ {0}");
}

ShiftType ShiftType::parse(std::string_view text, unsigned width) {
    const std::string_view whole = text;
    auto group = [&](std::string_view& rest) {
        std::size_t i = 0;
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
        if (i == rest.size() || rest[i] != '(') throw ValidationError("malformed shift type '" + std::string(whole) + "'");
        const std::size_t close = rest.find(')', i);
        if (close == std::string_view::npos) throw ValidationError("malformed shift type '" + std::string(whole) + "'");
        auto amounts = parse_amounts(rest.substr(i + 1, close - i - 1), whole);
        rest.remove_prefix(close + 1);
        return amounts;
    };
    std::string_view rest = text;
    auto rotr = group(rest);
    auto shr = group(rest);
    for (char ch : rest)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            throw ValidationError("trailing characters in shift type '" + std::string(whole) + "'");
    return ShiftType(width, std::move(rotr), std::move(shr));
}

std::string ShiftType::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < rotr.size(); ++i) out += (i ? "," : "") + std::to_string(rotr[i]);
    out += ")(";
    for (std::size_t i = 0; i < shr.size(); ++i) out += (i ? "," : "") + std::to_string(shr[i]);
    return out + ")";
}

std::uint64_t word_mask(unsigned width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

std::uint64_t shift_apply(const ShiftType& mu, std::uint64_t x) {
    const unsigned w = mu.width;
    x &= word_mask(w);
    std::uint64_t out = 0;
    for (int a : mu.rotr) {
        // ROTR^a_j(x) = x_{(j+a) mod w}
        const unsigned r = positive_mod(a, w);
        out ^= r == 0 ? x : ((x >> r) | (x << (w - r))) & word_mask(w);
    }
    for (int c : mu.shr) {
        // SHR^c_j(x) = x_{j+c} where 0 <= j+c < w, else 0
        out ^= c > 0 ? (x >> c) : ((x << -c) & word_mask(w));
    }
    return out;
}

ShiftType complement(const ShiftType& mu) {
    ShiftType out = mu;
    for (int& a : out.rotr) a = -a;
    for (int& c : out.shr) c = -c;
    return out;
}

GF2Matrix::GF2Matrix(unsigned width) : width_(width), rows_(width, 0) {
    if (width < 1 || width > 64) throw ValidationError("GF(2) matrix width must be in 1..64");
}

GF2Matrix GF2Matrix::identity(unsigned width) {
    GF2Matrix m(width);
    for (unsigned i = 0; i < width; ++i) m.rows_[i] = std::uint64_t{1} << i;
    return m;
}

GF2Matrix GF2Matrix::from_columns(const std::vector<std::uint64_t>& columns) {
    GF2Matrix m(static_cast<unsigned>(columns.size()));
    for (unsigned j = 0; j < columns.size(); ++j)
        for (unsigned i = 0; i < columns.size(); ++i)
            if ((columns[j] >> i) & 1U) m.rows_[i] |= std::uint64_t{1} << j;
    return m;
}

void GF2Matrix::set(unsigned row, unsigned col, bool value) {
    if (row >= width_ || col >= width_) throw ValidationError("GF(2) matrix index out of range");
    const std::uint64_t bit = std::uint64_t{1} << col;
    rows_[row] = value ? (rows_[row] | bit) : (rows_[row] & ~bit);
}

std::uint64_t GF2Matrix::column(unsigned j) const {
    std::uint64_t col = 0;
    for (unsigned i = 0; i < width_; ++i) col |= ((rows_[i] >> j) & 1U) << i;
    return col;
}

std::uint64_t GF2Matrix::apply(std::uint64_t x) const {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < width_; ++i) out |= static_cast<std::uint64_t>(std::popcount(rows_[i] & x) & 1) << i;
    return out;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& rhs) const {
    if (rhs.width_ != width_) throw ValidationError("GF(2) matrix width mismatch");
    GF2Matrix out(width_);
    for (unsigned i = 0; i < width_; ++i)
        for (unsigned k = 0; k < width_; ++k)
            if ((rows_[i] >> k) & 1U) out.rows_[i] ^= rhs.rows_[k];
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix out(width_);
    for (unsigned j = 0; j < width_; ++j) out.rows_[j] = column(j);
    return out;
}

GF2Matrix matrix_of(const ShiftType& mu) {
    std::vector<std::uint64_t> cols(mu.width);
    for (unsigned j = 0; j < mu.width; ++j) cols[j] = shift_apply(mu, std::uint64_t{1} << j);
    return GF2Matrix::from_columns(cols);
}

std::optional<GF2Matrix> invert(const GF2Matrix& m) {
    const unsigned w = m.width();
    std::vector<std::uint64_t> left(w), right(w);
    for (unsigned i = 0; i < w; ++i) {
        left[i] = m.row(i);
        right[i] = std::uint64_t{1} << i;
    }
    for (unsigned col = 0; col < w; ++col) {
        unsigned pivot = col;
        while (pivot < w && !((left[pivot] >> col) & 1U)) ++pivot;
        if (pivot == w) return std::nullopt;
        std::swap(left[pivot], left[col]);
        std::swap(right[pivot], right[col]);
        for (unsigned r = 0; r < w; ++r) {
            if (r != col && ((left[r] >> col) & 1U)) {
                left[r] ^= left[col];
                right[r] ^= right[col];
            }
        }
    }
    GF2Matrix inv(w);
    for (unsigned i = 0; i < w; ++i)
        for (unsigned j = 0; j < w; ++j) inv.set(i, j, (right[i] >> j) & 1U);
    return inv;
}

std::string to_bit_string(std::uint64_t value, unsigned width) {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if ((value >> i) & 1U) out[width - 1 - i] = '1';
    return out;
}

} // namespace poracle
