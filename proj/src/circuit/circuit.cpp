#include "cliffrw/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "cliffrw/error.hpp"

namespace cliffrw {

Circuit::Circuit(int num_qubits, int num_bits) : num_qubits_(num_qubits), num_bits_(num_bits) {
    if (num_qubits < 1) {
        throw ValidationError("circuit needs at least one qubit");
    }
    if (num_bits < 0) {
        throw ValidationError("negative classical bit count");
    }
}

Circuit::Circuit(int num_qubits, int num_bits, std::vector<Gate> gates, std::uint64_t revision)
    : Circuit(num_qubits, num_bits) {
    gates_.reserve(gates.size());
    for (auto& g : gates) {
        append(std::move(g));
    }
    revision_ = revision;
}

void Circuit::validate(const Gate& gate, std::span<const Gate> earlier) const {
    for (int w : gate.wires()) {
        if (w >= num_qubits_) {
            throw ValidationError("wire q" + std::to_string(w) + " out of range (" + std::to_string(num_qubits_) +
                                  " qubits)");
        }
    }
    if (gate.bit() && *gate.bit() >= num_bits_) {
        throw ValidationError("bit c" + std::to_string(*gate.bit()) + " out of range (" + std::to_string(num_bits_) +
                              " bits)");
    }
    for (const auto& prev : earlier) {
        if (!prev.is_measure()) {
            continue;
        }
        const int measured = prev.targets().front();
        if (gate.touches(measured)) {
            throw ValidationError("gate '" + gate.to_cqc() + "' touches q" + std::to_string(measured) +
                                  " after it was measured");
        }
    }
}

Circuit& Circuit::append(Gate gate) {
    validate(gate, gates_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit Circuit::with_gates(std::vector<Gate> gates) const {
    return Circuit(num_qubits_, num_bits_, std::move(gates), revision_ + 1);
}

Circuit Circuit::with_revision(std::uint64_t revision) const {
    Circuit out = *this;
    out.revision_ = revision;
    return out;
}

bool Circuit::has_measurements() const noexcept {
    return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_measure(); });
}

Circuit Circuit::without_measurements() const {
    Circuit out(num_qubits_, 0);
    for (const auto& g : gates_) {
        if (!g.is_measure()) {
            out.gates_.push_back(g);
        }
    }
    out.revision_ = revision_;
    return out;
}

Circuit Circuit::without_barriers() const {
    Circuit out(num_qubits_, num_bits_);
    for (const auto& g : gates_) {
        if (!g.is_barrier()) {
            out.gates_.push_back(g);
        }
    }
    out.revision_ = revision_;
    return out;
}

std::vector<Gate> Circuit::measurements() const {
    std::vector<Gate> out;
    std::copy_if(gates_.begin(), gates_.end(), std::back_inserter(out), [](const Gate& g) { return g.is_measure(); });
    return out;
}

Circuit Circuit::operator+(const Circuit& other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw ValidationError("cannot concatenate circuits of different widths");
    }
    Circuit out(num_qubits_, std::max(num_bits_, other.num_bits_), gates_);
    for (const auto& g : other.gates_) {
        out.append(g);
    }
    return out;
}

std::string emit_circuit(const Circuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits());
    if (circuit.num_bits() > 0) {
        out += "\nbits " + std::to_string(circuit.num_bits());
    }
    for (const auto& g : circuit.gates()) {
        out += '\n';
        out += g.to_cqc();
    }
    return out;
}

std::string circuit_hash(const Circuit& circuit) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : emit_circuit(circuit)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::ostream& operator<<(std::ostream& os, const Circuit& circuit) { return os << emit_circuit(circuit); }

}  // namespace cliffrw
