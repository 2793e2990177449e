#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "cliffrw/circuit.hpp"

namespace cliffrw::sim {

using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxUnitaryQubits = 12;
inline constexpr double kEquivalenceTolerance = 1e-10;

struct EquivalenceReport {
    bool equivalent = false;
    /// U_a = global_phase * U_b when equivalent; 1 otherwise.
    std::complex<double> global_phase{1.0, 0.0};
    double max_deviation = 0.0;
};

/// Full 2^n x 2^n matrix of the circuit; column j is the image of basis state j.
/// Barriers are ignored; MEASURE gates are rejected.
[[nodiscard]] Matrix unitary_of(const Circuit& c);

/// Compares two matrices of equal shape up to a global phase.
[[nodiscard]] EquivalenceReport compare_up_to_phase(const Matrix& a, const Matrix& b,
                                                    double tol = kEquivalenceTolerance);

[[nodiscard]] EquivalenceReport equivalent_up_to_phase(const Circuit& a, const Circuit& b,
                                                       double tol = kEquivalenceTolerance);

/// Compares only the columns whose basis index satisfies (j & mask) == value,
/// i.e. the action on inputs where some wires hold fixed classical values.
[[nodiscard]] EquivalenceReport equivalent_on_inputs(const Circuit& a, const Circuit& b, std::uint64_t mask,
                                                     std::uint64_t value, double tol = kEquivalenceTolerance);

}  // namespace cliffrw::sim
