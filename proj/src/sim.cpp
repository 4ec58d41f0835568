#include "poracle/sim.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "poracle/circuit.hpp"
#include "poracle/errors.hpp"

namespace poracle {

namespace {

constexpr unsigned max_state_qubits = 30;
constexpr unsigned max_dense_qubits = 12;
// Below this many amplitude updates the OpenMP fork costs more than it saves.
constexpr std::int64_t parallel_threshold = std::int64_t{1} << 14;

template <typename Real>
void apply_kernel(std::vector<std::complex<Real>>& amps, unsigned num_qubits, const GateApplication& gate) {
    std::uint64_t control_mask = 0;
    for (unsigned c : gate.controls) control_mask |= std::uint64_t{1} << c;

    std::vector<unsigned> fixed = gate.targets;
    fixed.insert(fixed.end(), gate.controls.begin(), gate.controls.end());
    std::sort(fixed.begin(), fixed.end());

    const auto count = static_cast<std::int64_t>(std::uint64_t{1} << (num_qubits - fixed.size()));
    // Spreads the free bits of k around the fixed positions, then sets the controls.
    auto expand = [&fixed, control_mask](std::uint64_t k) {
        for (unsigned p : fixed) {
            const std::uint64_t low = k & ((std::uint64_t{1} << p) - 1);
            k = ((k >> p) << (p + 1)) | low;
        }
        return k | control_mask;
    };

    std::complex<Real>* a = amps.data();
    const std::uint64_t t0 = std::uint64_t{1} << gate.targets[0];

    switch (gate.kind) {
    case GateKind::X:
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k));
            std::swap(a[i], a[i | t0]);
        }
        break;
    case GateKind::H: {
        const Real r = static_cast<Real>(1.0 / std::sqrt(2.0));
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k));
            const std::complex<Real> v0 = a[i];
            const std::complex<Real> v1 = a[i | t0];
            a[i] = (v0 + v1) * r;
            a[i | t0] = (v0 - v1) * r;
        }
        break;
    }
    case GateKind::S:
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k)) | t0;
            a[i] = {-a[i].imag(), a[i].real()};
        }
        break;
    case GateKind::Sdg:
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k)) | t0;
            a[i] = {a[i].imag(), -a[i].real()};
        }
        break;
    case GateKind::Z:
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k)) | t0;
            a[i] = -a[i];
        }
        break;
    case GateKind::Swap: {
        const std::uint64_t t1 = std::uint64_t{1} << gate.targets[1];
#pragma omp parallel for if (count > parallel_threshold)
        for (std::int64_t k = 0; k < count; ++k) {
            const std::uint64_t i = expand(static_cast<std::uint64_t>(k));
            std::swap(a[i | t0], a[i | t1]);
        }
        break;
    }
    }
}

} // namespace

const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::Z: return "z";
    case GateKind::Swap: return "swap";
    }
    return "?";
}

void validate_gate(const GateApplication& gate, unsigned num_qubits) {
    const std::size_t arity = gate.kind == GateKind::Swap ? 2 : 1;
    if (gate.targets.size() != arity)
        throw ValidationError(std::string(gate_name(gate.kind)) + " expects " + std::to_string(arity) + " target(s)");
    std::uint64_t seen = 0;
    auto claim = [&](unsigned q) {
        if (q >= num_qubits)
            throw ValidationError("qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) throw ValidationError("qubit " + std::to_string(q) + " used twice in one gate");
        seen |= bit;
    };
    for (unsigned q : gate.targets) claim(q);
    for (unsigned q : gate.controls) claim(q);
}

Statevector::Statevector(unsigned num_qubits, Precision precision, std::uint64_t memory_budget)
    : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > max_state_qubits)
        throw ValidationError("statevector needs 1.." + std::to_string(max_state_qubits) + " qubits, got " +
                              std::to_string(num_qubits));
    if (bytes_required(num_qubits, precision) > memory_budget)
        throw CapacityError(std::to_string(num_qubits) + "-qubit statevector needs " +
                            std::to_string(bytes_required(num_qubits, precision)) + " bytes, budget is " +
                            std::to_string(memory_budget));
    if (precision == Precision::Double) {
        std::vector<std::complex<double>> v(size());
        v[0] = 1.0;
        amps_ = std::move(v);
    } else {
        std::vector<std::complex<float>> v(size());
        v[0] = 1.0f;
        amps_ = std::move(v);
    }
}

std::uint64_t Statevector::bytes_required(unsigned num_qubits, Precision precision) {
    const std::uint64_t per = precision == Precision::Double ? sizeof(std::complex<double>) : sizeof(std::complex<float>);
    if (num_qubits >= 60) return ~std::uint64_t{0};
    return per << num_qubits;
}

Precision Statevector::precision() const noexcept {
    return std::holds_alternative<std::vector<std::complex<double>>>(amps_) ? Precision::Double : Precision::Single;
}

std::complex<double> Statevector::amplitude(std::size_t index) const {
    return std::visit([index](const auto& v) { return std::complex<double>(v.at(index)); }, amps_);
}

void Statevector::set_amplitude(std::size_t index, std::complex<double> value) {
    std::visit(
        [index, value](auto& v) {
            using C = typename std::decay_t<decltype(v)>::value_type;
            v.at(index) = C(value);
        },
        amps_);
}

void Statevector::set_basis(std::size_t index) {
    if (index >= size()) throw ValidationError("basis index out of range");
    std::visit(
        [index](auto& v) {
            std::fill(v.begin(), v.end(), typename std::decay_t<decltype(v)>::value_type{});
            v[index] = 1.0;
        },
        amps_);
}

void Statevector::assign(std::span<const std::complex<double>> values) {
    if (values.size() != size()) throw ValidationError("amplitude count does not match statevector");
    std::visit(
        [values](auto& v) {
            using C = typename std::decay_t<decltype(v)>::value_type;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = C(values[i]);
        },
        amps_);
}

std::vector<std::complex<double>> Statevector::amplitudes() const {
    return std::visit([](const auto& v) { return std::vector<std::complex<double>>(v.begin(), v.end()); }, amps_);
}

double Statevector::norm_squared() const {
    return std::visit(
        [](const auto& v) {
            double acc = 0.0;
            for (const auto& a : v) acc += std::norm(std::complex<double>(a));
            return acc;
        },
        amps_);
}

double Statevector::probability(std::size_t index) const { return std::norm(amplitude(index)); }

void Statevector::apply(const GateApplication& gate) {
    validate_gate(gate, num_qubits_);
    std::visit([&](auto& v) { apply_kernel(v, num_qubits_, gate); }, amps_);
}

void Statevector::apply(const Circuit& circuit) {
    if (circuit.num_qubits() != num_qubits_)
        throw ValidationError("circuit has " + std::to_string(circuit.num_qubits()) + " qubits, state has " +
                              std::to_string(num_qubits_));
    for (const Op& op : circuit.ops())
        if (const auto* gate = std::get_if<GateApplication>(&op)) apply(*gate);
}

void apply_circuit(Statevector& state, const Circuit& circuit) { state.apply(circuit); }

Distribution register_distribution(const Statevector& state, std::span<const QubitGroup> groups) {
    std::uint64_t seen = 0;
    std::vector<unsigned> order;
    for (const auto& g : groups) {
        for (unsigned q : g.qubits) {
            if (q >= state.num_qubits()) throw ValidationError("group '" + g.name + "' names qubit out of range");
            const std::uint64_t bit = std::uint64_t{1} << q;
            if (seen & bit) throw ValidationError("qubit " + std::to_string(q) + " appears in more than one group");
            seen |= bit;
            order.push_back(q);
        }
    }

    const unsigned key_bits = static_cast<unsigned>(order.size());
    auto compact = [&order](std::uint64_t index) {
        std::uint64_t key = 0;
        for (unsigned b = 0; b < order.size(); ++b) key |= ((index >> order[b]) & 1U) << b;
        return key;
    };

    std::unordered_map<std::uint64_t, double> sparse;
    std::vector<double> dense;
    const bool use_dense = key_bits <= 24;
    if (use_dense) dense.assign(std::size_t{1} << key_bits, 0.0);

    state.for_each_probability([&](std::size_t i, double p) {
        if (p == 0.0) return;
        const std::uint64_t key = compact(i);
        if (use_dense)
            dense[key] += p;
        else
            sparse[key] += p;
    });

    Distribution out;
    auto emit = [&](std::uint64_t key, double p) {
        if (p < distribution_cutoff) return;
        std::vector<std::uint64_t> values;
        unsigned bit = 0;
        for (const auto& g : groups) {
            std::uint64_t v = 0;
            for (unsigned j = 0; j < g.qubits.size(); ++j, ++bit) v |= ((key >> bit) & 1U) << j;
            values.push_back(v);
        }
        out[std::move(values)] += p;
    };
    if (use_dense) {
        for (std::size_t k = 0; k < dense.size(); ++k) emit(k, dense[k]);
    } else {
        for (const auto& [k, p] : sparse) emit(k, p);
    }
    return out;
}

DenseOperator dense_unitary(const Circuit& circuit) {
    const unsigned n = circuit.num_qubits();
    if (n > max_dense_qubits)
        throw SizeError("dense unitary limited to " + std::to_string(max_dense_qubits) + " qubits, circuit has " +
                        std::to_string(n));
    if (n == 0) return DenseOperator::identity(1);
    const std::size_t dim = std::size_t{1} << n;
    DenseOperator u(dim);
    Statevector state(n);
    for (std::size_t col = 0; col < dim; ++col) {
        state.set_basis(col);
        state.apply(circuit);
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = state.amplitude(row);
    }
    return u;
}

} // namespace poracle
