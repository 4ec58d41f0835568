#include "poracle/tape_text.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "poracle/errors.hpp"

namespace poracle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    return true;
}

std::optional<std::uint64_t> parse_number(std::string_view s) {
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        s.remove_prefix(2);
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

/// Length of the "(..)(..)" shift literal at the start of s, or 0.
std::size_t shift_literal_length(std::string_view s) {
    std::size_t i = 0;
    for (int group = 0; group < 2; ++group) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size() || s[i] != '(') return 0;
        const auto close = s.find(')', i);
        if (close == std::string_view::npos) return 0;
        i = close + 1;
    }
    return i;
}

class LineParser {
public:
    LineParser(ProgramTape& tape, std::size_t line) : tape_(tape), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

    RegId reg(std::string_view name) const {
        name = trim(name);
        auto id = tape_.find(name);
        if (!id) fail("unknown register '" + std::string(name) + "'");
        return *id;
    }

    std::vector<std::string_view> call_args(std::string_view rhs, std::string_view fn) const {
        rhs.remove_prefix(fn.size());
        rhs = trim(rhs);
        if (rhs.size() < 2 || rhs.front() != '(' || rhs.back() != ')')
            fail("expected " + std::string(fn) + "(...)");
        rhs = rhs.substr(1, rhs.size() - 2);
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true) {
            const auto comma = rhs.find(',', start);
            out.push_back(trim(rhs.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return out;
    }

    void parse(std::string_view text) {
        if (text.starts_with("reg ") || text.starts_with("reg\t")) {
            std::istringstream in{std::string(text.substr(3))};
            std::string name, width_text, extra;
            if (!(in >> name >> width_text) || (in >> extra)) fail("expected 'reg <name> <width>'");
            if (!valid_name(name)) fail("invalid register name '" + name + "'");
            auto width = parse_number(width_text);
            if (!width || *width == 0 || *width > 32) fail("invalid width '" + width_text + "'");
            tape_.add_register(name, static_cast<unsigned>(*width));
            return;
        }
        if (auto pos = text.find("<<~"); pos != std::string_view::npos) {
            const RegId r = reg(text.substr(0, pos));
            const auto literal = trim(text.substr(pos + 3));
            tape_.shift_inline(ShiftType::parse(literal, tape_.reg(r).width), r);
            return;
        }
        const auto pos = text.find("+=");
        if (pos == std::string_view::npos) fail("expected 'reg', '+=' or '<<~'");
        const RegId dst = reg(text.substr(0, pos));
        const auto rhs = trim(text.substr(pos + 2));
        if (rhs.empty()) fail("missing right-hand side");

        if (rhs.starts_with("maj") || rhs.starts_with("ch")) {
            const bool maj = rhs.starts_with("maj");
            const auto args = call_args(rhs, maj ? "maj" : "ch");
            if (args.size() != 3) fail("expected three arguments");
            if (maj)
                tape_.add_maj(dst, reg(args[0]), reg(args[1]), reg(args[2]));
            else
                tape_.add_ch(dst, reg(args[0]), reg(args[1]), reg(args[2]));
            return;
        }
        if (rhs.starts_with("shift")) {
            auto inner = trim(rhs.substr(5));
            if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')') fail("expected shift(<mu>, <reg>)");
            inner = inner.substr(1, inner.size() - 2);
            const auto len = shift_literal_length(inner);
            if (len == 0) fail("expected a shift literal such as (0,1)(3)");
            auto rest = trim(inner.substr(len));
            if (rest.empty() || rest.front() != ',') fail("expected ',' after the shift literal");
            const RegId x = reg(rest.substr(1));
            tape_.add_shift(dst, ShiftType::parse(trim(inner.substr(0, len)), tape_.reg(x).width), x);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(rhs.front()))) {
            auto value = parse_number(rhs);
            if (!value) fail("invalid constant '" + std::string(rhs) + "'");
            tape_.add_const(dst, *value);
            return;
        }
        tape_.add(dst, reg(rhs));
    }

private:
    ProgramTape& tape_;
    std::size_t line_;
};

} // namespace

ProgramTape parse_tape(std::string_view text) {
    ProgramTape tape;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            LineParser parser(tape, line_no);
            try {
                parser.parse(line);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(line_no, e.what());
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    tape.seal();
    return tape;
}

std::string format_tape(const ProgramTape& tape) {
    std::ostringstream out;
    for (const auto& r : tape.registers()) out << "reg " << r.name << ' ' << r.width << '\n';
    auto name = [&](RegId id) -> const std::string& { return tape.reg(id).name; };
    for (const auto& ins : tape.instructions()) {
        std::visit(overloaded{
                       [&](const AddReg& op) { out << name(op.dst) << " += " << name(op.src) << '\n'; },
                       [&](const AddConst& op) { out << name(op.dst) << " += " << op.value << '\n'; },
                       [&](const AddTemp& op) {
                           out << name(op.dst) << " += ";
                           std::visit(overloaded{
                                          [&](const MajTemp& t) {
                                              out << "maj(" << name(t.a) << ", " << name(t.b) << ", " << name(t.c)
                                                  << ')';
                                          },
                                          [&](const ChTemp& t) {
                                              out << "ch(" << name(t.a) << ", " << name(t.b) << ", " << name(t.c)
                                                  << ')';
                                          },
                                          [&](const ShiftTemp& t) {
                                              out << "shift(" << t.mu.to_string() << ", " << name(t.x) << ')';
                                          },
                                      },
                                      op.expr);
                           out << '\n';
                       },
                       [&](const ShiftInline& op) { out << name(op.reg) << " <<~ " << op.mu.to_string() << '\n'; },
                   },
                   ins);
    }
    return out.str();
}

} // namespace poracle
