#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cliffrw/circuit.hpp"

namespace cliffrw::sim {

inline constexpr int kMaxDenseQubits = 24;

/// Parses a basis-input string written q_{n-1} ... q0 (leftmost character is
/// the highest wire). An empty string means all zeros.
[[nodiscard]] std::uint64_t parse_basis_input(std::string_view bits, int num_qubits);

/// Dense amplitude vector; basis index bit k is qubit k.
class StateVector {
public:
    using cplx = std::complex<double>;

    explicit StateVector(int num_qubits, std::uint64_t basis_index = 0);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::uint64_t i) const { return amps_.at(i); }
    [[nodiscard]] double norm() const;
    [[nodiscard]] std::vector<double> probabilities() const;

    /// Applies a unitary gate. Barriers are no-ops; MEASURE throws ValidationError.
    void apply(const Gate& gate);

    /// Set by statevector_run when MEASURE gates were skipped.
    bool measurements_ignored = false;

private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

/// Runs the unitary part of `c` on a basis input; MEASURE gates are skipped
/// and flagged on the result.
[[nodiscard]] StateVector statevector_run(const Circuit& c, std::string_view input = {});

}  // namespace cliffrw::sim
