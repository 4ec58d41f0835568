#include "poracle/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "poracle/errors.hpp"

namespace poracle {

const char* role_name(RegisterRole role) {
    switch (role) {
    case RegisterRole::Index: return "index";
    case RegisterRole::Carry: return "carry";
    case RegisterRole::PhaseAncilla: return "phase_ancilla";
    case RegisterRole::Scratch: return "scratch";
    }
    return "?";
}

std::optional<RegisterRole> parse_role(std::string_view text) {
    for (auto role : {RegisterRole::Index, RegisterRole::Carry, RegisterRole::PhaseAncilla, RegisterRole::Scratch})
        if (text == role_name(role)) return role;
    return std::nullopt;
}

void RegisterLayout::add(std::string name, std::vector<unsigned> qubits, RegisterRole role) {
    if (find(name)) throw ValidationError("duplicate register name '" + name + "'");
    for (const auto& e : entries_)
        for (unsigned q : qubits)
            if (std::find(e.qubits.begin(), e.qubits.end(), q) != e.qubits.end())
                throw ValidationError("register '" + name + "' overlaps '" + e.name + "' at qubit " +
                                      std::to_string(q));
    entries_.push_back({std::move(name), std::move(qubits), role});
}

const RegisterEntry* RegisterLayout::find(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<unsigned> RegisterLayout::qubits_with_role(RegisterRole role) const {
    std::vector<unsigned> out;
    for (const auto& e : entries_)
        if (e.role == role) out.insert(out.end(), e.qubits.begin(), e.qubits.end());
    return out;
}

unsigned RegisterShape::total() const {
    unsigned n = 0;
    for (unsigned w : widths) n += w;
    return n;
}

unsigned RegisterShape::offset(std::size_t r) const {
    unsigned off = 0;
    for (std::size_t i = 0; i < r; ++i) off += widths.at(i);
    return off;
}

std::vector<std::uint64_t> RegisterShape::split(std::uint64_t flat) const {
    std::vector<std::uint64_t> out;
    for (unsigned w : widths) {
        out.push_back(flat & ((std::uint64_t{1} << w) - 1));
        flat >>= w;
    }
    return out;
}

std::uint64_t RegisterShape::join(std::span<const std::uint64_t> values) const {
    if (values.size() != widths.size()) throw ValidationError("value count does not match register shape");
    std::uint64_t flat = 0;
    unsigned off = 0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (values[i] >> widths[i]) throw ValidationError("value does not fit its register width");
        flat |= values[i] << off;
        off += widths[i];
    }
    return flat;
}

void Circuit::require_mutable() const {
    if (finalized_) throw std::logic_error("circuit is finalized");
}

Circuit& Circuit::add(GateApplication gate) {
    require_mutable();
    validate_gate(gate, num_qubits_);
    ops_.emplace_back(std::move(gate));
    return *this;
}

Circuit& Circuit::add(GateKind kind, std::vector<unsigned> targets, std::vector<unsigned> controls) {
    return add(GateApplication{kind, std::move(targets), std::move(controls)});
}

Circuit& Circuit::x(unsigned target, std::vector<unsigned> controls) {
    return add(GateKind::X, {target}, std::move(controls));
}
Circuit& Circuit::h(unsigned target, std::vector<unsigned> controls) {
    return add(GateKind::H, {target}, std::move(controls));
}
Circuit& Circuit::s(unsigned target) { return add(GateKind::S, {target}); }
Circuit& Circuit::sdg(unsigned target) { return add(GateKind::Sdg, {target}); }
Circuit& Circuit::z(unsigned target) { return add(GateKind::Z, {target}); }
Circuit& Circuit::swap(unsigned a, unsigned b, std::vector<unsigned> controls) {
    return add(GateKind::Swap, {a, b}, std::move(controls));
}

Circuit& Circuit::barrier() {
    require_mutable();
    ops_.emplace_back(Barrier{});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    require_mutable();
    if (other.num_qubits_ != num_qubits_)
        throw ValidationError("cannot append a " + std::to_string(other.num_qubits_) + "-qubit circuit to a " +
                              std::to_string(num_qubits_) + "-qubit circuit");
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

Circuit& Circuit::set_layout(RegisterLayout layout) {
    require_mutable();
    for (const auto& e : layout.entries())
        for (unsigned q : e.qubits)
            if (q >= num_qubits_) throw ValidationError("register '" + e.name + "' exceeds circuit width");
    layout_ = std::move(layout);
    return *this;
}

Circuit& Circuit::finalize() {
    finalized_ = true;
    return *this;
}

std::size_t Circuit::gate_count() const {
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const Op& op) { return std::holds_alternative<GateApplication>(op); }));
}

std::map<std::string, std::size_t> Circuit::gate_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const Op& op : ops_) {
        const auto* g = std::get_if<GateApplication>(&op);
        if (!g) continue;
        // c-prefix per control: x, cx, ccx, cccx ...
        counts[std::string(g->controls.size(), 'c') + gate_name(g->kind)]++;
    }
    return counts;
}

bool Circuit::operator==(const Circuit& other) const {
    return num_qubits_ == other.num_qubits_ && ops_ == other.ops_ && layout_ == other.layout_;
}

GateApplication inverse(const GateApplication& gate) {
    GateApplication inv = gate;
    if (gate.kind == GateKind::S) inv.kind = GateKind::Sdg;
    else if (gate.kind == GateKind::Sdg) inv.kind = GateKind::S;
    return inv;
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    for (auto it = circuit.ops().rbegin(); it != circuit.ops().rend(); ++it) {
        if (const auto* g = std::get_if<GateApplication>(&*it))
            out.add(inverse(*g));
        else
            out.barrier();
    }
    out.set_layout(circuit.layout());
    return out.finalize();
}

Circuit conjugate(const Circuit& body, const Circuit& inner) {
    if (body.num_qubits() != inner.num_qubits())
        throw ValidationError("conjugate: body and inner circuits differ in qubit count");
    Circuit out(body.num_qubits());
    out.append(body).append(inner).append(adjoint(body));
    out.set_layout(body.layout().empty() ? inner.layout() : body.layout());
    return out.finalize();
}

Circuit layer(unsigned num_qubits, GateKind kind, std::span<const unsigned> qubits) {
    Circuit out(num_qubits);
    for (unsigned q : qubits) out.add(kind, {q});
    return out.finalize();
}

std::vector<unsigned> QubitAllocator::allocate(unsigned count) {
    std::vector<unsigned> out;
    std::sort(free_.begin(), free_.end(), std::greater<>());
    while (out.size() < count && !free_.empty()) {
        out.push_back(free_.back());
        free_.pop_back();
    }
    while (out.size() < count) out.push_back(next_++);
    std::sort(out.begin(), out.end());
    return out;
}

void QubitAllocator::release(std::span<const unsigned> qubits) {
    for (unsigned q : qubits) {
        if (q >= next_ || std::find(free_.begin(), free_.end(), q) != free_.end())
            throw ValidationError("releasing qubit " + std::to_string(q) + " that is not allocated");
        free_.push_back(q);
    }
}

} // namespace poracle
