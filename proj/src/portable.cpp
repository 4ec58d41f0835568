#include "poracle/portable.hpp"

#include <charconv>
#include <sstream>

#include "poracle/errors.hpp"

namespace poracle {

namespace {

constexpr std::string_view header = "PORACLE-CIRCUIT 1";
constexpr std::string_view barrier_line = "# barrier";

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

unsigned parse_uint(std::string_view tok, std::size_t line_no) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "expected an unsigned integer, got '" + std::string(tok) + "'");
    return v;
}

std::optional<GateKind> parse_kind(std::string_view tok) {
    for (auto k : {GateKind::X, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::Z, GateKind::Swap})
        if (tok == gate_name(k)) return k;
    return std::nullopt;
}

} // namespace

std::string export_portable(const Circuit& circuit) {
    std::ostringstream out;
    out << header << '\n' << "qubits " << circuit.num_qubits() << '\n';
    for (const auto& e : circuit.layout().entries()) {
        out << "reg " << e.name << ' ' << role_name(e.role);
        for (unsigned q : e.qubits) out << ' ' << q;
        out << '\n';
    }
    for (const Op& op : circuit.ops()) {
        const auto* g = std::get_if<GateApplication>(&op);
        if (!g) {
            out << barrier_line << '\n';
            continue;
        }
        out << gate_name(g->kind);
        for (unsigned t : g->targets) out << ' ' << t;
        out << " |";
        for (unsigned c : g->controls) out << ' ' << c;
        out << '\n';
    }
    return out.str();
}

Circuit parse_portable(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        return line;
    };

    auto first = next_line();
    if (!first || *first != header) throw ParseError(1, "missing header '" + std::string(header) + "'");
    auto second = next_line();
    if (!second) throw ParseError(2, "missing qubit count");
    const auto count_toks = split_ws(*second);
    if (count_toks.size() != 2 || count_toks[0] != "qubits") throw ParseError(2, "expected 'qubits <n>'");
    Circuit circuit(parse_uint(count_toks[1], 2));
    RegisterLayout layout;
    bool gates_started = false;
    auto start_gates = [&]() {
        if (gates_started) return;
        try {
            circuit.set_layout(layout);
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
        gates_started = true;
    };

    while (auto line = next_line()) {
        if (line->empty()) continue;
        if (*line == barrier_line) {
            start_gates();
            circuit.barrier();
            continue;
        }
        if (line->front() == '#') continue;
        const auto toks = split_ws(*line);
        if (toks[0] == "reg") {
            if (gates_started) throw ParseError(line_no, "register declaration after gates");
            if (toks.size() < 3) throw ParseError(line_no, "expected 'reg <name> <role> <qubits...>'");
            const auto role = parse_role(toks[2]);
            if (!role) throw ParseError(line_no, "unknown register role '" + std::string(toks[2]) + "'");
            std::vector<unsigned> qubits;
            for (std::size_t i = 3; i < toks.size(); ++i) qubits.push_back(parse_uint(toks[i], line_no));
            try {
                layout.add(std::string(toks[1]), std::move(qubits), *role);
            } catch (const ValidationError& e) {
                throw ParseError(line_no, e.what());
            }
            continue;
        }
        const auto kind = parse_kind(toks[0]);
        if (!kind) throw ParseError(line_no, "unknown gate '" + std::string(toks[0]) + "'");
        GateApplication gate{*kind, {}, {}};
        bool after_bar = false;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            if (toks[i] == "|") {
                if (after_bar) throw ParseError(line_no, "more than one '|'");
                after_bar = true;
                continue;
            }
            (after_bar ? gate.controls : gate.targets).push_back(parse_uint(toks[i], line_no));
        }
        if (!after_bar) throw ParseError(line_no, "gate line lacks the '|' separator");
        start_gates();
        try {
            circuit.add(std::move(gate));
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    start_gates();
    return circuit.finalize();
}

} // namespace poracle
