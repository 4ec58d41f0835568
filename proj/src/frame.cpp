#include "poracle/frame.hpp"

#include <algorithm>

#include "poracle/errors.hpp"

namespace poracle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t maj_word(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return (a & b) ^ (b & c) ^ (c & a); }
std::uint64_t ch_word(std::uint64_t a, std::uint64_t b, std::uint64_t c, unsigned w) {
    return ((a & b) ^ (~a & c)) & word_mask(w);
}

} // namespace

RegId ProgramTape::add_register(std::string name, unsigned width) {
    require_open();
    if (name.empty()) throw ValidationError("register name must not be empty");
    if (width < 1 || width > 32) throw ValidationError("register '" + name + "' width must be in 1..32");
    if (find(name)) throw ValidationError("duplicate register '" + name + "'");
    registers_.push_back({std::move(name), width});
    return RegId{registers_.size() - 1};
}

void ProgramTape::add(RegId dst, RegId src) { push(AddReg{dst, src}); }
void ProgramTape::add_const(RegId dst, std::uint64_t value) { push(AddConst{dst, value}); }
void ProgramTape::add_maj(RegId dst, RegId a, RegId b, RegId c) { push(AddTemp{dst, MajTemp{a, b, c}}); }
void ProgramTape::add_ch(RegId dst, RegId a, RegId b, RegId c) { push(AddTemp{dst, ChTemp{a, b, c}}); }
void ProgramTape::add_shift(RegId dst, const ShiftType& mu, RegId x) { push(AddTemp{dst, ShiftTemp{mu, x}}); }
void ProgramTape::shift_inline(const ShiftType& mu, RegId reg) { push(ShiftInline{mu, reg}); }

void ProgramTape::require_open() const {
    if (sealed_) throw std::logic_error("program tape is sealed");
}

void ProgramTape::require_reg(RegId id) const {
    if (id.value >= registers_.size()) throw ValidationError("unknown register id " + std::to_string(id.value));
}

void ProgramTape::push(Instruction instruction) {
    require_open();
    auto same_width = [this](RegId a, RegId b) {
        if (reg(a).width != reg(b).width)
            throw ValidationError("registers '" + reg(a).name + "' and '" + reg(b).name + "' differ in width");
    };
    auto invertible_shift = [this](const ShiftType& mu, RegId r) {
        if (mu.width != reg(r).width)
            throw ValidationError("shift " + mu.to_string() + " has width " + std::to_string(mu.width) +
                                  ", register '" + reg(r).name + "' has " + std::to_string(reg(r).width));
        if (!invert(matrix_of(mu))) throw SingularError("shift " + mu.to_string() + " is not invertible");
    };
    auto distinct3 = [this](RegId a, RegId b, RegId c) {
        if (a == b || b == c || a == c) throw ValidationError("temporary arguments must be distinct registers");
    };

    std::visit(overloaded{
                   [&](const AddReg& op) {
                       require_reg(op.dst);
                       require_reg(op.src);
                       if (op.dst == op.src) throw ValidationError("x += x is not an in-place bijection");
                       same_width(op.dst, op.src);
                   },
                   [&](const AddConst& op) {
                       require_reg(op.dst);
                       if (op.value > word_mask(reg(op.dst).width))
                           throw ValidationError("constant " + std::to_string(op.value) + " does not fit register '" +
                                                 reg(op.dst).name + "'");
                   },
                   [&](const AddTemp& op) {
                       require_reg(op.dst);
                       std::visit(overloaded{
                                      [&](const MajTemp& t) {
                                          for (RegId r : {t.a, t.b, t.c}) require_reg(r);
                                          distinct3(t.a, t.b, t.c);
                                          for (RegId r : {t.a, t.b, t.c}) {
                                              if (r == op.dst)
                                                  throw ValidationError("destination appears in its own temporary");
                                              same_width(op.dst, r);
                                          }
                                      },
                                      [&](const ChTemp& t) {
                                          for (RegId r : {t.a, t.b, t.c}) require_reg(r);
                                          distinct3(t.a, t.b, t.c);
                                          for (RegId r : {t.a, t.b, t.c}) {
                                              if (r == op.dst)
                                                  throw ValidationError("destination appears in its own temporary");
                                              same_width(op.dst, r);
                                          }
                                      },
                                      [&](const ShiftTemp& t) {
                                          require_reg(t.x);
                                          if (t.x == op.dst)
                                              throw ValidationError("destination appears in its own temporary");
                                          same_width(op.dst, t.x);
                                          invertible_shift(t.mu, t.x);
                                      },
                                  },
                                  op.expr);
                   },
                   [&](const ShiftInline& op) {
                       require_reg(op.reg);
                       invertible_shift(op.mu, op.reg);
                   },
               },
               instruction);
    instructions_.push_back(std::move(instruction));
}

ProgramTape& ProgramTape::seal() {
    sealed_ = true;
    return *this;
}

std::optional<RegId> ProgramTape::find(std::string_view name) const {
    for (std::size_t i = 0; i < registers_.size(); ++i)
        if (registers_[i].name == name) return RegId{i};
    return std::nullopt;
}

RegisterShape ProgramTape::shape() const {
    RegisterShape s;
    for (const auto& r : registers_) s.widths.push_back(r.width);
    return s;
}

bool ProgramTape::uses_addition() const {
    return std::any_of(instructions_.begin(), instructions_.end(),
                       [](const Instruction& ins) { return !std::holds_alternative<ShiftInline>(ins); });
}

bool ProgramTape::uses_scratch() const {
    return std::any_of(instructions_.begin(), instructions_.end(), [](const Instruction& ins) {
        if (std::holds_alternative<ShiftInline>(ins) || std::holds_alternative<AddConst>(ins)) return true;
        if (const auto* t = std::get_if<AddTemp>(&ins)) return std::holds_alternative<ShiftTemp>(t->expr);
        return false;
    });
}

std::uint64_t evaluate_temp(const ProgramTape& tape, const TempExpr& expr, std::span<const std::uint64_t> values) {
    return std::visit(overloaded{
                          [&](const MajTemp& t) { return maj_word(values[t.a.value], values[t.b.value], values[t.c.value]); },
                          [&](const ChTemp& t) {
                              return ch_word(values[t.a.value], values[t.b.value], values[t.c.value],
                                             tape.reg(t.a).width);
                          },
                          [&](const ShiftTemp& t) { return shift_apply(t.mu, values[t.x.value]); },
                      },
                      expr);
}

RegisterValues calculate(const ProgramTape& tape, std::span<const std::uint64_t> seeds) {
    if (seeds.size() != tape.registers().size())
        throw ValidationError("expected " + std::to_string(tape.registers().size()) + " seed values, got " +
                              std::to_string(seeds.size()));
    RegisterValues v(seeds.begin(), seeds.end());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > word_mask(tape.registers()[i].width))
            throw ValidationError("seed for '" + tape.registers()[i].name + "' does not fit its width");

    for (const auto& ins : tape.instructions()) {
        std::visit(overloaded{
                       [&](const AddReg& op) {
                           v[op.dst.value] = (v[op.dst.value] + v[op.src.value]) & word_mask(tape.reg(op.dst).width);
                       },
                       [&](const AddConst& op) {
                           v[op.dst.value] = (v[op.dst.value] + op.value) & word_mask(tape.reg(op.dst).width);
                       },
                       [&](const AddTemp& op) {
                           v[op.dst.value] =
                               (v[op.dst.value] + evaluate_temp(tape, op.expr, v)) & word_mask(tape.reg(op.dst).width);
                       },
                       [&](const ShiftInline& op) { v[op.reg.value] = shift_apply(op.mu, v[op.reg.value]); },
                   },
                   ins);
    }
    return v;
}

std::map<std::string, std::uint64_t> calculate(const ProgramTape& tape,
                                               const std::map<std::string, std::uint64_t>& seeds) {
    RegisterValues in;
    for (const auto& r : tape.registers()) {
        auto it = seeds.find(r.name);
        if (it == seeds.end()) throw ValidationError("missing seed for register '" + r.name + "'");
        in.push_back(it->second);
    }
    for (const auto& [name, value] : seeds)
        if (!tape.find(name)) throw ValidationError("seed names unknown register '" + name + "'");
    const RegisterValues out = calculate(tape, in);
    std::map<std::string, std::uint64_t> named;
    for (std::size_t i = 0; i < out.size(); ++i) named[tape.registers()[i].name] = out[i];
    return named;
}

RegisterLayout FrameLayout::circuit_layout() const {
    RegisterLayout out;
    for (const auto& r : registers) out.add(r.name, r.qubits, RegisterRole::Index);
    if (carry) out.add("carry", {*carry}, RegisterRole::Carry);
    if (minus_anc) out.add("anc", {*minus_anc}, RegisterRole::PhaseAncilla);
    if (scratch) out.add(scratch->name, scratch->qubits, RegisterRole::Scratch);
    return out;
}

std::vector<QubitGroup> FrameLayout::register_groups() const {
    std::vector<QubitGroup> out;
    for (const auto& r : registers) out.push_back({r.name, r.qubits});
    return out;
}

FrameLayout allocate_layout(const ProgramTape& tape) {
    QubitAllocator alloc;
    FrameLayout layout;
    unsigned max_width = 0;
    for (const auto& r : tape.registers()) {
        layout.registers.push_back({r.name, alloc.allocate(r.width)});
        layout.index_qubits.insert(layout.index_qubits.end(), layout.registers.back().qubits.begin(),
                                   layout.registers.back().qubits.end());
        max_width = std::max(max_width, r.width);
    }
    if (tape.uses_addition()) {
        layout.carry = alloc.allocate(1).front();
        layout.minus_anc = alloc.allocate(1).front();
    }
    if (tape.uses_scratch()) layout.scratch = WordRegisterRef{"scratch", alloc.allocate(max_width)};
    layout.num_qubits = alloc.high_water();
    return layout;
}

namespace {

WordRegisterRef scratch_for(const FrameLayout& layout, unsigned width) {
    if (!layout.scratch || layout.scratch->width() < width) throw ValidationError("layout lacks a scratch word");
    WordRegisterRef s = *layout.scratch;
    s.qubits.resize(width);
    return s;
}

unsigned carry_of(const FrameLayout& layout) {
    if (!layout.carry) throw ValidationError("layout lacks a carry qubit");
    return *layout.carry;
}

unsigned anc_of(const FrameLayout& layout) {
    if (!layout.minus_anc) throw ValidationError("layout lacks a phase ancilla");
    return *layout.minus_anc;
}

void check_targets(const ProgramTape& tape, std::span<const std::uint64_t> targets) {
    if (targets.size() != tape.registers().size())
        throw ValidationError("expected " + std::to_string(tape.registers().size()) + " target values, got " +
                              std::to_string(targets.size()));
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (targets[i] > word_mask(tape.registers()[i].width))
            throw ValidationError("target for '" + tape.registers()[i].name + "' does not fit its width");
}

Circuit target_layer(const FrameLayout& layout, std::span<const std::uint64_t> targets, GateKind kind) {
    Circuit out(layout.num_qubits);
    for (std::size_t r = 0; r < layout.registers.size(); ++r)
        for (unsigned j = 0; j < layout.registers[r].width(); ++j)
            if ((targets[r] >> j) & 1U) out.add(kind, {layout.registers[r].qubits[j]});
    return out.finalize();
}

} // namespace

EmittedCircuit emit_oracle_circuit(const ProgramTape& tape, const FrameLayout& layout,
                                   std::span<const std::uint64_t> targets) {
    check_targets(tape, targets);
    const unsigned n = layout.num_qubits;
    const auto& regs = layout.registers;
    Circuit out(n);
    for (const auto& ins : tape.instructions()) {
        std::visit(overloaded{
                       [&](const AddReg& op) {
                           out.append(adder_gate(n, regs[op.src.value], regs[op.dst.value], carry_of(layout)));
                       },
                       [&](const AddConst& op) {
                           const auto& dst = regs[op.dst.value];
                           out.append(const_adder_gate(n, dst, op.value, scratch_for(layout, dst.width()),
                                                       carry_of(layout)));
                       },
                       [&](const AddTemp& op) {
                           const auto& dst = regs[op.dst.value];
                           std::visit(overloaded{
                                          [&](const MajTemp& t) {
                                              const auto& a = regs[t.a.value];
                                              out.append(conjugate(maj_gate(n, a, regs[t.b.value], regs[t.c.value]),
                                                                   adder_gate(n, a, dst, carry_of(layout))));
                                          },
                                          [&](const ChTemp& t) {
                                              const auto& c = regs[t.c.value];
                                              out.append(conjugate(ch_gate(n, regs[t.a.value], regs[t.b.value], c),
                                                                   adder_gate(n, c, dst, carry_of(layout))));
                                          },
                                          [&](const ShiftTemp& t) {
                                              const auto& x = regs[t.x.value];
                                              out.append(conjugate(
                                                  shifter_inline_gate(n, t.mu, x, scratch_for(layout, x.width())),
                                                  adder_gate(n, x, dst, carry_of(layout))));
                                          },
                                      },
                                      op.expr);
                       },
                       [&](const ShiftInline& op) {
                           const auto& r = regs[op.reg.value];
                           out.append(shifter_inline_gate(n, op.mu, r, scratch_for(layout, r.width())));
                       },
                   },
                   ins);
    }
    out.append(target_layer(layout, targets, GateKind::X));
    out.set_layout(layout.circuit_layout());
    out.finalize();
    return {std::move(out), layout.index_qubits};
}

EmittedCircuit emit_recip_circuit(const ProgramTape& tape, const FrameLayout& layout,
                                  std::span<const std::uint64_t> targets) {
    if (!targets.empty()) check_targets(tape, targets);
    const unsigned n = layout.num_qubits;
    const auto& regs = layout.registers;
    Circuit out(n);
    if (layout.carry) out.h(*layout.carry);
    if (layout.minus_anc) out.h(*layout.minus_anc).z(*layout.minus_anc);

    for (const auto& ins : tape.instructions()) {
        std::visit(overloaded{
                       [&](const AddReg& op) {
                           out.append(recip_adder_gate(n, regs[op.src.value], regs[op.dst.value], carry_of(layout),
                                                       anc_of(layout)));
                       },
                       [&](const AddConst& op) {
                           const auto& dst = regs[op.dst.value];
                           out.append(recip_const_adder_gate(n, dst, op.value, scratch_for(layout, dst.width()),
                                                             carry_of(layout)));
                       },
                       [&](const AddTemp& op) {
                           const auto& dst = regs[op.dst.value];
                           std::visit(
                               overloaded{
                                   [&](const MajTemp& t) {
                                       const auto& a = regs[t.a.value];
                                       out.append(conjugate(
                                           recip_maj_word(n, a, regs[t.b.value], regs[t.c.value], anc_of(layout)),
                                           recip_adder_gate(n, a, dst, carry_of(layout), anc_of(layout))));
                                   },
                                   [&](const ChTemp& t) {
                                       const auto& c = regs[t.c.value];
                                       out.append(conjugate(
                                           recip_ch_word(n, regs[t.a.value], regs[t.b.value], c, anc_of(layout)),
                                           recip_adder_gate(n, c, dst, carry_of(layout), anc_of(layout))));
                                   },
                                   [&](const ShiftTemp& t) {
                                       const auto& x = regs[t.x.value];
                                       out.append(
                                           conjugate(recip_shifter_gate(n, t.mu, x, scratch_for(layout, x.width())),
                                                     recip_adder_gate(n, x, dst, carry_of(layout), anc_of(layout))));
                                   },
                               },
                               op.expr);
                       },
                       [&](const ShiftInline& op) {
                           const auto& r = regs[op.reg.value];
                           out.append(recip_shifter_gate(n, op.mu, r, scratch_for(layout, r.width())));
                       },
                   },
                   ins);
    }
    if (!targets.empty()) out.append(target_layer(layout, targets, GateKind::Z));
    out.set_layout(layout.circuit_layout());
    out.finalize();
    return {std::move(out), layout.index_qubits};
}

PartialOracle build_partial_oracle(const ProgramTape& tape, const FrameLayout& layout,
                                   std::span<const std::uint64_t> targets, bool target_in_reciprocal) {
    auto direct = emit_oracle_circuit(tape, layout, targets);
    auto recip = emit_recip_circuit(tape, layout, target_in_reciprocal ? targets : std::span<const std::uint64_t>{});
    PartialOracle out;
    out.direct = std::move(direct.circuit);
    out.reciprocal = std::move(recip.circuit);
    out.index_qubits = layout.index_qubits;
    out.f_wires = std::move(direct.output_wires);
    out.kappa_wires = std::move(recip.output_wires);
    return out;
}

Circuit pipeline_circuit(const ProgramTape& tape, std::span<const std::uint64_t> targets,
                         const IterationOptions& options) {
    const FrameLayout layout = allocate_layout(tape);
    Circuit out(layout.num_qubits);
    out.append(layer(layout.num_qubits, GateKind::H, layout.index_qubits));
    if (layout.index_qubits.empty()) {
        out.set_layout(layout.circuit_layout());
        return out.finalize();
    }
    const PartialOracle oracle = build_partial_oracle(tape, layout, targets, options.target_in_reciprocal);
    out.barrier();
    if (options.mode == IterationMode::Parallel) {
        out.append(parallel_iteration_circuit(oracle, options.convention));
    } else {
        if (options.convention != MatchConvention::AllZeros)
            throw ValidationError("sequential mode supports the all-zeros convention only");
        for (unsigned ell = 0; ell < oracle.index_qubits.size(); ++ell)
            out.append(sequential_iteration_circuit(oracle, ell)).barrier();
    }
    out.set_layout(layout.circuit_layout());
    return out.finalize();
}

IterationResult partial_oracle_iteration(const ProgramTape& tape, std::span<const std::uint64_t> targets,
                                         const IterationOptions& options) {
    check_targets(tape, targets);
    FrameLayout layout = allocate_layout(tape);
    if (layout.num_qubits == 0) throw ValidationError("program declares no registers");
    const Circuit pipeline = pipeline_circuit(tape, targets, options);
    const unsigned iterations =
        options.mode == IterationMode::Parallel ? 1U : static_cast<unsigned>(layout.index_qubits.size());
    IterationResult result{Statevector(layout.num_qubits, options.precision, options.memory_budget),
                           std::move(layout), {}, pipeline.gate_counts(), iterations};
    result.state.apply(pipeline);
    const auto groups = result.layout.register_groups();
    result.distribution = register_distribution(result.state, groups);
    return result;
}

} // namespace poracle
