#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliffrw/gate.hpp"

namespace cliffrw {

/// Ordered gate list over `num_qubits` wires and `num_bits` classical bits.
///
/// Every gate is range-checked when it is appended, and a measured wire may
/// not be touched again (measurement is terminal per wire). The revision
/// counter identifies a particular value in a rewrite history; it takes no
/// part in equality.
class Circuit {
public:
    explicit Circuit(int num_qubits, int num_bits = 0);
    Circuit(int num_qubits, int num_bits, std::vector<Gate> gates, std::uint64_t revision = 0);

    /// Appends a gate after validating wire and bit ranges.
    Circuit& append(Gate gate);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] int num_bits() const noexcept { return num_bits_; }
    [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
    [[nodiscard]] const Gate& operator[](std::size_t i) const { return gates_.at(i); }
    [[nodiscard]] std::uint64_t revision() const noexcept { return revision_; }

    /// New circuit with the same register and a replaced gate list, one revision later.
    [[nodiscard]] Circuit with_gates(std::vector<Gate> gates) const;
    [[nodiscard]] Circuit with_revision(std::uint64_t revision) const;

    [[nodiscard]] bool has_measurements() const noexcept;
    /// Copy without MEASURE gates (and without classical bits).
    [[nodiscard]] Circuit without_measurements() const;
    [[nodiscard]] Circuit without_barriers() const;
    [[nodiscard]] std::vector<Gate> measurements() const;

    /// Concatenation on the same register.
    [[nodiscard]] Circuit operator+(const Circuit& other) const;

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.num_qubits_ == b.num_qubits_ && a.num_bits_ == b.num_bits_ && a.gates_ == b.gates_;
    }

private:
    void validate(const Gate& gate, std::span<const Gate> earlier) const;

    int num_qubits_;
    int num_bits_;
    std::vector<Gate> gates_;
    std::uint64_t revision_ = 0;
};

/// Parses CQC text (see README for the grammar).
[[nodiscard]] Circuit parse_circuit(std::string_view text);
/// Canonical CQC text; lines joined by '\n' without a trailing newline.
[[nodiscard]] std::string emit_circuit(const Circuit& circuit);
/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
[[nodiscard]] std::string circuit_hash(const Circuit& circuit);

/// Writes the canonical CQC text.
std::ostream& operator<<(std::ostream& os, const Circuit& circuit);

}  // namespace cliffrw
